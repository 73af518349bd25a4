#include "rfx/hilbert.hpp"

#include <algorithm>

namespace rfx {

namespace {

using Laurent = std::map<int, mpz_class>;

void clean(Laurent& p) {
  for (auto it = p.begin(); it != p.end();)
    it = it->second == 0 ? p.erase(it) : std::next(it);
}

Laurent times(const Laurent& a, const Laurent& b) {
  Laurent r;
  for (const auto& [i, x] : a)
    for (const auto& [j, y] : b) r[i + j] += x * y;
  clean(r);
  return r;
}

Laurent one_minus(int w) {
  Laurent r{{0, 1}};
  r[w] -= 1;
  return r;
}

// p / (1 - t^w) if exact.
bool divide(const Laurent& p, int w, Laurent& q) {
  q.clear();
  if (p.empty()) return true;
  int lo = p.begin()->first, hi = p.rbegin()->first;
  std::map<int, mpz_class> qq;
  for (int k = lo; k <= hi - w; ++k) {
    mpz_class v = 0;
    auto it = p.find(k);
    if (it != p.end()) v = it->second;
    auto prev = qq.find(k - w);
    if (prev != qq.end()) v += prev->second;
    if (v != 0) qq[k] = v;
  }
  Laurent check = times(qq, one_minus(w));
  if (check != p) return false;
  q = qq;
  return true;
}

}  // namespace

HilbertSeries::HilbertSeries(std::map<int, mpz_class> numerator, std::vector<int> denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
  clean(num_);
  std::sort(den_.begin(), den_.end());
}

HilbertSeries HilbertSeries::reduced() const {
  if (num_.empty()) return HilbertSeries({}, {});
  Laurent n = num_;
  std::vector<int> rest;
  for (int w : den_) {
    Laurent q;
    if (divide(n, w, q)) n = q;
    else rest.push_back(w);
  }
  return HilbertSeries(n, rest);
}

mpz_class HilbertSeries::coefficient(int d) const {
  // expand prod 1/(1 - t^w) up to the needed degree
  if (num_.empty()) return 0;
  int lo = num_.begin()->first;
  int span = d - lo;
  if (span < 0) return 0;
  std::vector<mpz_class> series(span + 1, 0);
  series[0] = 1;
  for (int w : den_)
    for (int k = w; k <= span; ++k) series[k] += series[k - w];
  mpz_class total = 0;
  for (const auto& [e, c] : num_)
    if (d - e >= 0 && d - e <= span) total += c * series[d - e];
  return total;
}

int HilbertSeries::numerator_offset() const {
  HilbertSeries r = reduced();
  return r.num_.empty() ? 0 : r.num_.begin()->first;
}

std::vector<mpz_class> HilbertSeries::numerator_coefficients() const {
  HilbertSeries r = reduced();
  std::vector<mpz_class> out;
  if (r.num_.empty()) return out;
  for (int k = r.num_.begin()->first; k <= r.num_.rbegin()->first; ++k) {
    auto it = r.num_.find(k);
    out.push_back(it == r.num_.end() ? mpz_class(0) : it->second);
  }
  return out;
}

namespace {

std::string laurent_string(const Laurent& p) {
  if (p.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [e, c] : p) {
    mpz_class a = abs(c);
    if (first) {
      if (c < 0) s += "-";
    } else {
      s += c < 0 ? " - " : " + ";
    }
    first = false;
    if (e == 0) {
      s += a.get_str();
      continue;
    }
    if (a != 1) s += a.get_str() + "*";
    s += "t";
    if (e != 1) s += "^" + (e < 0 ? "(" + std::to_string(e) + ")" : std::to_string(e));
  }
  return s;
}

}  // namespace

std::string HilbertSeries::to_string() const {
  HilbertSeries r = reduced();
  std::string n = laurent_string(r.num_);
  if (r.den_.empty()) return n;
  std::string d;
  for (int w : r.den_) d += "(1 - t" + (w == 1 ? std::string() : "^" + std::to_string(w)) + ")";
  return "(" + n + ")/" + d;
}

HilbertSeries HilbertSeries::operator+(const HilbertSeries& o) const {
  // common denominator: multiset union
  std::vector<int> a = den_, b = o.den_, common;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::vector<int> only_a, only_b;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
  std::set_difference(common.begin(), common.end(), a.begin(), a.end(), std::back_inserter(only_b));
  std::set_difference(common.begin(), common.end(), b.begin(), b.end(), std::back_inserter(only_a));
  Laurent x = num_, y = o.num_;
  for (int w : only_b) x = times(x, one_minus(w));
  for (int w : only_a) y = times(y, one_minus(w));
  for (const auto& [e, c] : y) x[e] += c;
  clean(x);
  return HilbertSeries(x, common).reduced();
}

HilbertSeries HilbertSeries::shifted(int d) const {
  Laurent x;
  for (const auto& [e, c] : num_) x[e + d] = c;
  return HilbertSeries(x, den_);
}

bool operator==(const HilbertSeries& a, const HilbertSeries& b) {
  Laurent x = a.num_, y = b.num_;
  for (int w : b.den_) x = times(x, one_minus(w));
  for (int w : a.den_) y = times(y, one_minus(w));
  return x == y;
}

}  // namespace rfx
