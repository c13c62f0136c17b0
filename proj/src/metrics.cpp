// Copyright 2026 The nnic Authors
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

#include "nnic/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "nnic/error.hpp"

namespace nnic {

double psnr(const Frame& a, const Frame& b) {
  if (a.width() != b.width() || a.height() != b.height()) throw Error("psnr: dimension mismatch");
  const auto sa = a.samples();
  const auto sb = b.samples();
  double sum = 0.0;
  for (std::size_t i = 0; i < sa.size(); ++i) {
    const double d = static_cast<double>(sa[i]) - static_cast<double>(sb[i]);
    sum += d * d;
  }
  if (sum == 0.0) return std::numeric_limits<double>::infinity();
  const double mse = sum / static_cast<double>(sa.size());
  return 10.0 * std::log10(255.0 * 255.0 / mse);
}

std::string format_psnr(double db) {
  if (std::isinf(db)) return "inf";
  std::ostringstream s;
  s.precision(6);
  s << std::fixed << db;
  return s.str();
}

namespace {

using Poly = std::array<double, 4>;  // c0 + c1 t + c2 t^2 + c3 t^3 in a scaled variable

// One interpolant through the points of a curve, x strictly increasing.
class Interpolant {
 public:
  virtual ~Interpolant() = default;
  virtual double integral(double lo, double hi) const = 0;
};

class CubicFit final : public Interpolant {
 public:
  // Returns false when the 4x4 system is too ill-conditioned to trust.
  bool fit(const std::vector<double>& x, const std::vector<double>& y) {
    const auto [mn, mx] = std::minmax_element(x.begin(), x.end());
    center_ = 0.5 * (*mn + *mx);
    scale_ = 0.5 * (*mx - *mn);
    if (!(scale_ > 0.0)) return false;

    const std::size_t n = x.size();
    // Least-squares normal equations on the scaled abscissa (exact for 4 points).
    std::array<std::array<double, 5>, 4> a{};
    for (std::size_t k = 0; k < n; ++k) {
      const double t = (x[k] - center_) / scale_;
      std::array<double, 4> pw = {1.0, t, t * t, t * t * t};
      for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) a[r][c] += pw[r] * pw[c];
        a[r][4] += pw[r] * y[k];
      }
    }
    double max_pivot = 0.0;
    double min_pivot = std::numeric_limits<double>::infinity();
    for (int col = 0; col < 4; ++col) {
      int piv = col;
      for (int r = col + 1; r < 4; ++r) {
        if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
      }
      std::swap(a[col], a[piv]);
      const double p = a[col][col];
      max_pivot = std::max(max_pivot, std::abs(p));
      min_pivot = std::min(min_pivot, std::abs(p));
      if (p == 0.0) return false;
      for (int r = 0; r < 4; ++r) {
        if (r == col) continue;
        const double f = a[r][col] / p;
        for (int c = col; c < 5; ++c) a[r][c] -= f * a[col][c];
      }
    }
    if (min_pivot < 1e-10 * max_pivot) return false;
    for (int r = 0; r < 4; ++r) coef_[r] = a[r][4] / a[r][r];
    return std::all_of(coef_.begin(), coef_.end(), [](double c) { return std::isfinite(c); });
  }

  double integral(double lo, double hi) const override {
    auto antiderivative = [&](double x) {
      const double t = (x - center_) / scale_;
      return scale_ * (coef_[0] * t + coef_[1] * t * t / 2 + coef_[2] * t * t * t / 3 + coef_[3] * t * t * t * t / 4);
    };
    return antiderivative(hi) - antiderivative(lo);
  }

 private:
  Poly coef_{};
  double center_ = 0.0;
  double scale_ = 1.0;
};

// Fritsch-Carlson monotone piecewise cubic Hermite interpolation.
class Pchip final : public Interpolant {
 public:
  Pchip(std::vector<double> x, std::vector<double> y) : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    std::vector<double> h(n - 1), delta(n - 1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
      h[k] = x_[k + 1] - x_[k];
      delta[k] = (y_[k + 1] - y_[k]) / h[k];
    }
    m_.assign(n, 0.0);
    if (n == 2) {
      m_[0] = m_[1] = delta[0];
      return;
    }
    for (std::size_t k = 1; k + 1 < n; ++k) {
      if (delta[k - 1] * delta[k] <= 0.0) continue;
      const double w1 = 2 * h[k] + h[k - 1];
      const double w2 = h[k] + 2 * h[k - 1];
      m_[k] = (w1 + w2) / (w1 / delta[k - 1] + w2 / delta[k]);
    }
    m_[0] = end_slope(h[0], h[1], delta[0], delta[1]);
    m_[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
  }

  double integral(double lo, double hi) const override {
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < x_.size(); ++k) {
      const double a = std::max(lo, x_[k]);
      const double b = std::min(hi, x_[k + 1]);
      if (b <= a) continue;
      // Simpson's rule is exact on a cubic segment.
      total += (b - a) / 6.0 * (eval(k, a) + 4.0 * eval(k, 0.5 * (a + b)) + eval(k, b));
    }
    return total;
  }

 private:
  static double end_slope(double h0, double h1, double d0, double d1) {
    double m = ((2 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if (m * d0 <= 0.0) {
      m = 0.0;
    } else if (d0 * d1 <= 0.0 && std::abs(m) > std::abs(3 * d0)) {
      m = 3 * d0;
    }
    return m;
  }

  double eval(std::size_t k, double x) const {
    const double h = x_[k + 1] - x_[k];
    const double t = (x - x_[k]) / h;
    const double t2 = t * t;
    const double t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * y_[k] + (t3 - 2 * t2 + t) * h * m_[k] + (-2 * t3 + 3 * t2) * y_[k + 1] +
           (t3 - t2) * h * m_[k + 1];
  }

  std::vector<double> x_, y_, m_;
};

struct Curve {
  std::vector<double> x, y;
};

// Sorts by x and rejects repeated abscissae.
Curve make_curve(const std::vector<RdPoint>& pts, bool rate_is_x) {
  if (pts.size() != 4) throw Error("BD metrics need exactly 4 RD points per curve");
  std::vector<double> rates;
  for (const auto& p : pts) rates.push_back(p.rate);
  std::sort(rates.begin(), rates.end());
  if (std::adjacent_find(rates.begin(), rates.end()) != rates.end()) throw Error("degenerate curve: repeated rate");
  std::vector<std::pair<double, double>> xy;
  for (const auto& p : pts) {
    if (!(p.rate > 0.0) || !std::isfinite(p.psnr)) throw Error("degenerate curve: rate must be positive, PSNR finite");
    const double lr = std::log(p.rate);
    xy.emplace_back(rate_is_x ? lr : p.psnr, rate_is_x ? p.psnr : lr);
  }
  std::sort(xy.begin(), xy.end());
  Curve c;
  for (std::size_t i = 0; i < xy.size(); ++i) {
    if (i > 0 && !(xy[i].first > xy[i - 1].first)) throw Error("degenerate curve: repeated values");
    c.x.push_back(xy[i].first);
    c.y.push_back(xy[i].second);
  }
  return c;
}

double integrate(const Curve& c, double lo, double hi, BdInterpolation interp) {
  if (interp != BdInterpolation::kPchip) {
    CubicFit fit;
    if (fit.fit(c.x, c.y)) return fit.integral(lo, hi);
    if (interp == BdInterpolation::kCubic) throw Error("degenerate curve: cubic fit is ill-conditioned");
  }
  return Pchip(c.x, c.y).integral(lo, hi);
}

// Mean of (test - anchor) over the overlap of the two x ranges.
double average_difference(const Curve& anchor, const Curve& test, BdInterpolation interp) {
  const double lo = std::max(anchor.x.front(), test.x.front());
  const double hi = std::min(anchor.x.back(), test.x.back());
  if (!(hi > lo)) throw Error("non-overlapping RD curves");
  return (integrate(test, lo, hi, interp) - integrate(anchor, lo, hi, interp)) / (hi - lo);
}

}  // namespace

double bd_rate(const std::vector<RdPoint>& anchor, const std::vector<RdPoint>& test, BdInterpolation interp) {
  const double avg = average_difference(make_curve(anchor, false), make_curve(test, false), interp);
  return (std::exp(avg) - 1.0) * 100.0;
}

double bd_psnr(const std::vector<RdPoint>& anchor, const std::vector<RdPoint>& test, BdInterpolation interp) {
  return average_difference(make_curve(anchor, true), make_curve(test, true), interp);
}

std::vector<RdPoint> read_rd_curve(std::istream& in) {
  std::vector<RdPoint> pts;
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    RdPoint p;
    if (!(ls >> p.rate)) continue;
    if (!(ls >> p.psnr)) throw Error("RD curve line needs 'rate psnr'");
    pts.push_back(p);
  }
  return pts;
}

std::vector<RdPoint> load_rd_curve(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return read_rd_curve(in);
}

}  // namespace nnic
