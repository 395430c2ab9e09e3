// Copyright 2026 The lsphase Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS-IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace lsphase {

/// Half-integer quantum number stored as twice its value, so labels such as
/// mu = -1/2 are exact integers and never drift through float arithmetic.
class HalfInt {
 public:
  constexpr HalfInt() = default;

  static constexpr HalfInt from_twice(int twice) { return HalfInt(twice); }
  static constexpr HalfInt integer(int n) { return HalfInt(2 * n); }

  /// Accepts values whose double of is an integer to within 1e-9 (e.g. CLI
  /// input "-0.5"); anything else is rejected.
  static HalfInt from_double(double v) {
    const double twice = 2.0 * v;
    const double rounded = std::round(twice);
    if (!std::isfinite(twice) || std::abs(twice - rounded) > 1e-9) {
      throw std::invalid_argument("not a half-integer: " + std::to_string(v));
    }
    return HalfInt(static_cast<int>(rounded));
  }

  constexpr int twice() const { return twice_; }
  constexpr double value() const { return twice_ / 2.0; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }
  constexpr HalfInt abs() const { return HalfInt(twice_ < 0 ? -twice_ : twice_); }
  constexpr int sign() const { return twice_ > 0 ? 1 : (twice_ < 0 ? -1 : 0); }

  friend constexpr HalfInt operator+(HalfInt a, HalfInt b) { return HalfInt(a.twice_ + b.twice_); }
  friend constexpr HalfInt operator-(HalfInt a, HalfInt b) { return HalfInt(a.twice_ - b.twice_); }
  constexpr HalfInt operator-() const { return HalfInt(-twice_); }
  friend constexpr bool operator==(HalfInt a, HalfInt b) { return a.twice_ == b.twice_; }
  friend constexpr bool operator!=(HalfInt a, HalfInt b) { return a.twice_ != b.twice_; }
  friend constexpr bool operator<(HalfInt a, HalfInt b) { return a.twice_ < b.twice_; }
  friend constexpr bool operator<=(HalfInt a, HalfInt b) { return a.twice_ <= b.twice_; }
  friend constexpr bool operator>(HalfInt a, HalfInt b) { return a.twice_ > b.twice_; }
  friend constexpr bool operator>=(HalfInt a, HalfInt b) { return a.twice_ >= b.twice_; }

  std::string str() const {
    if (is_integer()) return std::to_string(twice_ / 2);
    return std::to_string(twice_) + "/2";
  }

 private:
  constexpr explicit HalfInt(int twice) : twice_(twice) {}
  int twice_ = 0;
};

}  // namespace lsphase
