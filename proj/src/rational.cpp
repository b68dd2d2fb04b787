#include "tconv/rational.hpp"

#include <cmath>
#include <sstream>

#include "tconv/errors.hpp"

namespace tconv {

Rational parse_rational(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (c != ' ' && c != '\t') s.push_back(c);
  }
  if (s.empty()) throw InputError("empty rational literal");
  if (s.front() == '+') {
    s.erase(s.begin());
    if (!s.empty() && s.front() == '-') throw InputError("malformed rational '" + std::string(text) + "'");
  }
  Rational q;
  // GMP's parser accepts base prefixes and leading zeros; we only want [-]digits[/digits].
  std::size_t slash = s.find('/');
  auto digits_ok = [](std::string_view part, bool allow_sign) {
    if (allow_sign && !part.empty() && part.front() == '-') part.remove_prefix(1);
    if (part.empty()) return false;
    for (char c : part)
      if (c < '0' || c > '9') return false;
    return true;
  };
  if (slash == std::string::npos) {
    if (!digits_ok(s, true)) throw InputError("malformed rational '" + std::string(text) + "'");
  } else {
    if (!digits_ok(std::string_view(s).substr(0, slash), true) ||
        !digits_ok(std::string_view(s).substr(slash + 1), false))
      throw InputError("malformed rational '" + std::string(text) + "'");
  }
  if (q.set_str(s, 10) != 0) throw InputError("malformed rational '" + std::string(text) + "'");
  if (q.get_den() == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
  q.canonicalize();
  return q;
}

std::string format_rational(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

RationalVec parse_rational_vec(std::string_view comma_separated) {
  RationalVec out;
  std::size_t start = 0;
  while (start <= comma_separated.size()) {
    std::size_t end = comma_separated.find(',', start);
    if (end == std::string_view::npos) end = comma_separated.size();
    out.push_back(parse_rational(comma_separated.substr(start, end - start)));
    start = end + 1;
  }
  return out;
}

std::string format_rational_vec(const RationalVec& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ", ";
    os << format_rational(v[i]);
  }
  os << ')';
  return os.str();
}

Rational exact_rational(double x) {
  if (!std::isfinite(x)) throw InputError("cannot rationalize a non-finite value");
  Rational q(x);  // mpq_set_d is exact
  q.canonicalize();
  return q;
}

RationalVec zeros(std::size_t dim) { return RationalVec(dim, Rational(0)); }

RationalVec operator+(const RationalVec& a, const RationalVec& b) {
  RationalVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

RationalVec operator-(const RationalVec& a, const RationalVec& b) {
  RationalVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

RationalVec operator*(const Rational& s, const RationalVec& a) {
  RationalVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = s * a[i];
  return out;
}

Rational ratio(long num, long den) {
  if (den == 0) throw InputError("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational dot(const RationalVec& a, const RationalVec& b) {
  Rational acc(0);
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

bool is_zero(const RationalVec& v) {
  for (const auto& q : v)
    if (q != 0) return false;
  return true;
}

Eigen::VectorXd to_double(const RationalVec& v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out[static_cast<Eigen::Index>(i)] = v[i].get_d();
  return out;
}

RationalVec to_rational(const Eigen::VectorXd& v) {
  RationalVec out(static_cast<std::size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) out[static_cast<std::size_t>(i)] = exact_rational(v[i]);
  return out;
}

RowEchelon row_echelon(const RationalMatrix& input, std::size_t cols) {
  RationalMatrix m = input;
  RowEchelon out;
  out.cols = cols;
  std::size_t lead_row = 0;
  for (std::size_t c = 0; c < cols && lead_row < m.size(); ++c) {
    std::size_t pick = lead_row;
    while (pick < m.size() && m[pick][c] == 0) ++pick;
    if (pick == m.size()) continue;
    std::swap(m[pick], m[lead_row]);
    Rational inv = 1 / m[lead_row][c];
    for (auto& e : m[lead_row]) e *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == lead_row || m[r][c] == 0) continue;
      Rational f = m[r][c];
      for (std::size_t j = c; j < cols; ++j) m[r][j] -= f * m[lead_row][j];
    }
    out.pivots.push_back(c);
    ++lead_row;
  }
  m.resize(lead_row);
  out.rows = std::move(m);
  return out;
}

RationalVec RowEchelon::reduce(RationalVec v) const {
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const Rational f = v[pivots[r]];
    if (f == 0) continue;
    for (std::size_t j = 0; j < cols; ++j) v[j] -= f * rows[r][j];
  }
  return v;
}

RationalMatrix RowEchelon::kernel() const {
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  RationalMatrix basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    RationalVec x = zeros(cols);
    x[free] = 1;
    for (std::size_t r = 0; r < rows.size(); ++r) x[pivots[r]] = -rows[r][free];
    basis.push_back(std::move(x));
  }
  return basis;
}

}  // namespace tconv
