// Copyright (C) 2026 The Mirror Authors
// SPDX-License-Identifier: Apache-2.0

// Writes the binary fixtures that are derived from code rather than data:
//   reference_net.ferw    make_reference_network(kReferenceSeed)
//   always_pass_96.hcas   a one-window cascade for 96x96 face crops

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <span>

#include "mirror/fer/network.hpp"
#include "mirror/fer/reference.hpp"
#include "mirror/vision/cascade.hpp"

namespace {

constexpr std::uint64_t kReferenceSeed = 2026;

void write(const std::filesystem::path& path, std::span<const std::byte> bytes) {
  std::ofstream out(path, std::ios::binary);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("cannot write " + path.string());
  std::cout << path.string() << " (" << bytes.size() << " bytes)\n";
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: mirror-fixtures OUT_DIR\n";
    return 2;
  }
  try {
    const std::filesystem::path out = argv[1];
    std::filesystem::create_directories(out);
    write(out / "reference_net.ferw",
          mirror::fer::save_weights(mirror::fer::make_reference_network(kReferenceSeed)));
    write(out / "always_pass_96.hcas",
          mirror::vision::serialize_cascade_binary(mirror::vision::always_pass_cascade(96, 96)));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
