// Copyright 2026 The osod-eval Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <array>

namespace osod {

// Axis-aligned box in pixel units, [x_min, y_min, x_max, y_max].
// Areas use the continuous convention (no +1 pixel), so a box spanning
// [0, 2] has width 2.
class BoundingBox {
 public:
  // Throws SchemaError unless all coordinates are finite and the box has
  // positive width and height.
  BoundingBox(double x_min, double y_min, double x_max, double y_max);

  static BoundingBox FromArray(const std::array<double, 4>& xyxy) {
    return BoundingBox(xyxy[0], xyxy[1], xyxy[2], xyxy[3]);
  }
  // COCO-style [x, y, width, height].
  static BoundingBox FromXywh(double x, double y, double w, double h) {
    return BoundingBox(x, y, x + w, y + h);
  }

  double x_min() const { return x_min_; }
  double y_min() const { return y_min_; }
  double x_max() const { return x_max_; }
  double y_max() const { return y_max_; }
  double width() const { return x_max_ - x_min_; }
  double height() const { return y_max_ - y_min_; }
  double area() const { return width() * height(); }
  std::array<double, 4> to_array() const {
    return {x_min_, y_min_, x_max_, y_max_};
  }

  friend bool operator==(const BoundingBox&, const BoundingBox&) = default;

 private:
  double x_min_;
  double y_min_;
  double x_max_;
  double y_max_;
};

// Intersection over union. Symmetric bit-for-bit: every operation below is
// commutative in its arguments.
inline double Iou(const BoundingBox& a, const BoundingBox& b) {
  const double iw =
      std::min(a.x_max(), b.x_max()) - std::max(a.x_min(), b.x_min());
  if (iw <= 0.0) return 0.0;
  const double ih =
      std::min(a.y_max(), b.y_max()) - std::max(a.y_min(), b.y_min());
  if (ih <= 0.0) return 0.0;
  const double inter = iw * ih;
  const double uni = a.area() + b.area() - inter;
  return std::clamp(inter / uni, 0.0, 1.0);
}

}  // namespace osod
