#include "hkd/piecewise.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "hkd/error.hpp"

namespace hkd {

namespace {

const Poly& zero_poly() {
  static const Poly zero;
  return zero;
}

std::vector<Rational> merged_breakpoints(const std::vector<Rational>& a,
                                         const std::vector<Rational>& b) {
  std::vector<Rational> out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

template <class Op>
PiecewisePoly combine(const PiecewisePoly& f, const PiecewisePoly& g, Op op) {
  const auto breaks = merged_breakpoints(f.breakpoints(), g.breakpoints());
  if (breaks.size() < 2) return {};
  std::vector<Poly> pieces;
  pieces.reserve(breaks.size() - 1);
  for (std::size_t j = 0; j + 1 < breaks.size(); ++j)
    pieces.push_back(op(f.piece_at(breaks[j]), g.piece_at(breaks[j])));
  return PiecewisePoly(breaks, std::move(pieces));
}

}  // namespace

PiecewisePoly::PiecewisePoly(std::vector<Rational> breakpoints, std::vector<Poly> pieces)
    : breaks_(std::move(breakpoints)), pieces_(std::move(pieces)) {
  if (breaks_.empty() && pieces_.empty()) return;
  if (breaks_.size() != pieces_.size() + 1)
    throw Error(ErrorCode::Validation, "piecewise: need exactly one more breakpoint than pieces");
  for (std::size_t j = 0; j + 1 < breaks_.size(); ++j)
    if (!(breaks_[j] < breaks_[j + 1]))
      throw Error(ErrorCode::Validation, "piecewise: breakpoints must be strictly increasing");
  canonicalize();
}

PiecewisePoly PiecewisePoly::on_interval(const Rational& lo, const Rational& hi, Poly p) {
  if (!(lo < hi)) return {};
  return PiecewisePoly({lo, hi}, {std::move(p)});
}

void PiecewisePoly::canonicalize() {
  // Merge equal neighbours.
  std::vector<Rational> breaks{breaks_.front()};
  std::vector<Poly> pieces;
  for (std::size_t j = 0; j < pieces_.size(); ++j) {
    if (!pieces.empty() && pieces.back() == pieces_[j]) {
      breaks.back() = breaks_[j + 1];
    } else {
      pieces.push_back(std::move(pieces_[j]));
      breaks.push_back(breaks_[j + 1]);
    }
  }
  // Trim zero pieces at both ends.
  std::size_t lead = 0;
  while (lead < pieces.size() && pieces[lead].is_zero()) ++lead;
  std::size_t tail = pieces.size();
  while (tail > lead && pieces[tail - 1].is_zero()) --tail;
  if (lead == tail) {
    breaks_.clear();
    pieces_.clear();
    return;
  }
  pieces_.assign(std::make_move_iterator(pieces.begin() + static_cast<std::ptrdiff_t>(lead)),
                 std::make_move_iterator(pieces.begin() + static_cast<std::ptrdiff_t>(tail)));
  breaks_.assign(breaks.begin() + static_cast<std::ptrdiff_t>(lead),
                 breaks.begin() + static_cast<std::ptrdiff_t>(tail + 1));
}

std::optional<Rational> PiecewisePoly::support_begin() const {
  if (breaks_.empty()) return std::nullopt;
  return breaks_.front();
}

std::optional<Rational> PiecewisePoly::support_end() const {
  if (breaks_.empty()) return std::nullopt;
  return breaks_.back();
}

const Poly& PiecewisePoly::piece_at(const Rational& x) const {
  if (breaks_.empty() || x < breaks_.front() || x >= breaks_.back()) return zero_poly();
  // First breakpoint strictly greater than x; the piece starts one before it.
  auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
  return pieces_[static_cast<std::size_t>(it - breaks_.begin()) - 1];
}

Rational PiecewisePoly::operator()(const Rational& x) const { return piece_at(x)(x); }

Rational pp_eval(const PiecewisePoly& f, const Rational& x) { return f(x); }

PiecewisePoly pp_add(const PiecewisePoly& f, const PiecewisePoly& g) {
  return combine(f, g, [](const Poly& a, const Poly& b) { return a + b; });
}

PiecewisePoly pp_sub(const PiecewisePoly& f, const PiecewisePoly& g) {
  return combine(f, g, [](const Poly& a, const Poly& b) { return a - b; });
}

PiecewisePoly pp_mul(const PiecewisePoly& f, const PiecewisePoly& g) {
  return combine(f, g, [](const Poly& a, const Poly& b) { return a * b; });
}

PiecewisePoly pp_scale(const PiecewisePoly& f, const Rational& c) {
  if (c == 0 || f.is_zero()) return {};
  std::vector<Poly> pieces;
  pieces.reserve(f.pieces().size());
  for (const auto& p : f.pieces()) pieces.push_back(p * c);
  return PiecewisePoly(f.breakpoints(), std::move(pieces));
}

PiecewisePoly pp_restrict(const PiecewisePoly& f, const Rational& lo, const Rational& hi) {
  return pp_mul(f, PiecewisePoly::on_interval(lo, hi, Poly::constant(Rational(1))));
}

Rational pp_integrate(const PiecewisePoly& f) {
  Rational total(0);
  const auto& b = f.breakpoints();
  for (std::size_t j = 0; j < f.pieces().size(); ++j) total += f.pieces()[j].integrate(b[j], b[j + 1]);
  return total;
}

Rational pp_sup_diff_sampled(const PiecewisePoly& f, const PiecewisePoly& g,
                             std::uint64_t grid_denominator) {
  if (grid_denominator == 0)
    throw Error(ErrorCode::InvalidArgument, "grid denominator must be >= 1");
  std::optional<Rational> lo, hi;
  for (const auto* h : {&f, &g}) {
    if (h->is_zero()) continue;
    if (!lo || *h->support_begin() < *lo) lo = h->support_begin();
    if (!hi || *h->support_end() > *hi) hi = h->support_end();
  }
  if (!lo) return Rational(0);

  Rational best(0);
  auto visit = [&](const Rational& x) {
    Rational d = abs(Rational(f(x) - g(x)));
    if (d > best) best = d;
  };
  for (const auto& x : f.breakpoints()) visit(x);
  for (const auto& x : g.breakpoints()) visit(x);

  const Rational n(Integer(std::to_string(grid_denominator)));
  Integer j = floor(Rational(*lo * n));
  if (Rational(j) < *lo * n) ++j;
  const Integer last = floor(Rational(*hi * n));
  for (; j <= last; ++j) visit(Rational(j) / n);
  return best;
}

PiecewisePoly pp_step(std::span<const Rational> values, std::uint64_t q) {
  if (values.empty()) return {};
  const Integer qz(std::to_string(q));
  std::vector<Rational> breaks;
  std::vector<Poly> pieces;
  breaks.reserve(values.size() + 1);
  for (std::size_t m = 0; m <= values.size(); ++m) {
    Rational x(Integer(std::to_string(m)), qz);
    x.canonicalize();
    breaks.push_back(x);
  }
  for (const auto& v : values) pieces.push_back(Poly::constant(v));
  return PiecewisePoly(std::move(breaks), std::move(pieces));
}

PiecewisePoly pp_linear_interpolant(std::span<const Rational> values, std::uint64_t q) {
  if (values.size() < 2) return {};
  const Integer qz(std::to_string(q));
  const Rational qr(qz);
  std::vector<Rational> breaks;
  std::vector<Poly> pieces;
  for (std::size_t m = 0; m < values.size(); ++m) {
    Rational x(Integer(std::to_string(m)), qz);
    x.canonicalize();
    breaks.push_back(x);
  }
  for (std::size_t m = 0; m + 1 < values.size(); ++m) {
    // v_m + (v_{m+1} - v_m) * (q x - m)
    const Rational slope = (values[m + 1] - values[m]) * qr;
    const Rational intercept = values[m] - (values[m + 1] - values[m]) * Rational(Integer(std::to_string(m)));
    pieces.push_back(Poly{intercept, slope});
  }
  return PiecewisePoly(std::move(breaks), std::move(pieces));
}

std::string pp_sample_csv(const PiecewisePoly& f, std::uint64_t grid) {
  if (grid == 0) throw Error(ErrorCode::InvalidArgument, "grid must be >= 1");
  std::ostringstream out;
  out << "x_rational,f_rational,f_decimal20\n";
  if (f.is_zero()) return out.str();
  const Rational n(Integer(std::to_string(grid)));
  Integer j = floor(Rational(*f.support_begin() * n));
  if (Rational(j) < *f.support_begin() * n) ++j;
  const Integer last = floor(Rational(*f.support_end() * n));
  for (; j <= last; ++j) {
    const Rational x = Rational(j) / n;
    const Rational y = f(x);
    out << to_string(x) << ',' << to_string(y) << ',' << to_decimal(y, 20) << '\n';
  }
  return out.str();
}

}  // namespace hkd
