// Copyright 2026 The layoutret Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>

namespace layoutret {

// Raw storage units found in OOXML parts.
enum class RawUnit {
  emu,              // DrawingML, 360000 per cm
  twip,             // WordprocessingML page geometry, 1440 per inch
  half_point,       // WordprocessingML run size
  hundredth_point,  // DrawingML run size
  point,            // 72 per inch
};

enum class OutUnit { cm, pt };

struct Length {
  double value;
  OutUnit unit;
};

inline constexpr double kEmuPerCm = 360000.0;
inline constexpr double kCmPerInch = 2.54;

// Lengths come out in centimeters, font sizes in points. Full precision;
// rounding to the canonical grid happens when a feature is recorded.
constexpr Length convert_length(std::int64_t raw, RawUnit source) {
  const auto v = static_cast<double>(raw);
  switch (source) {
    case RawUnit::emu: return {v / kEmuPerCm, OutUnit::cm};
    case RawUnit::twip: return {v * kCmPerInch / 1440.0, OutUnit::cm};
    case RawUnit::half_point: return {v / 2.0, OutUnit::pt};
    case RawUnit::hundredth_point: return {v / 100.0, OutUnit::pt};
    case RawUnit::point: return {v * kCmPerInch / 72.0, OutUnit::cm};
  }
  return {v, OutUnit::cm};
}

constexpr double emu_to_cm(std::int64_t emu) { return convert_length(emu, RawUnit::emu).value; }
constexpr double twip_to_cm(std::int64_t twip) { return convert_length(twip, RawUnit::twip).value; }
constexpr double inch_to_cm(double inches) { return inches * kCmPerInch; }

}  // namespace layoutret
