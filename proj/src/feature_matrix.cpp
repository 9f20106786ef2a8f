// lvdsk/feature_matrix.cpp

// Copyright 2026  LVDSK Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "lvdsk/feature_matrix.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

static_assert(std::endian::native == std::endian::little,
              "feature file I/O assumes a little-endian host");

namespace lvdsk {

void FeatureMatrix::validate() const {
  if (dim <= 0 || frames <= 0)
    throw std::invalid_argument("feature matrix: empty dimensions");
  if (data.size() != static_cast<std::size_t>(dim) * frames)
    throw std::invalid_argument("feature matrix: storage size mismatch");
  for (double x : data)
    if (!std::isfinite(x)) throw std::invalid_argument("feature matrix: non-finite entry");
}

void write_feature_file(const std::string& path, const FeatureMatrix& m) {
  m.validate();
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("write_feature_file: cannot open " + path);
  out.write("LVF1", 4);
  const std::uint32_t d = static_cast<std::uint32_t>(m.dim);
  const std::uint32_t t = static_cast<std::uint32_t>(m.frames);
  out.write(reinterpret_cast<const char*>(&d), 4);
  out.write(reinterpret_cast<const char*>(&t), 4);
  out.write(reinterpret_cast<const char*>(m.data.data()),
            static_cast<std::streamsize>(m.data.size() * sizeof(double)));
  if (!out) throw std::runtime_error("write_feature_file: write failed for " + path);
}

FeatureMatrix read_feature_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("read_feature_file: cannot open " + path);
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, "LVF1", 4) != 0)
    throw std::runtime_error("read_feature_file: " + path + " is not an LVF1 file");
  std::uint32_t d = 0, t = 0;
  in.read(reinterpret_cast<char*>(&d), 4);
  in.read(reinterpret_cast<char*>(&t), 4);
  if (!in || d == 0 || t == 0)
    throw std::runtime_error("read_feature_file: bad header in " + path);
  FeatureMatrix m(static_cast<int>(d), static_cast<int>(t));
  in.read(reinterpret_cast<char*>(m.data.data()),
          static_cast<std::streamsize>(m.data.size() * sizeof(double)));
  if (!in) throw std::runtime_error("read_feature_file: truncated data in " + path);
  m.validate();
  return m;
}

}  // namespace lvdsk
