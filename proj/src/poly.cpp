#include "poly.hpp"

#include <algorithm>

#include "gmorita/error.hpp"

namespace gmorita::poly {

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0)
    f.pop_back();
}

Poly mul(const PrimeField& F, const Poly& a, const Poly& b) {
  if (a.empty() || b.empty())
    return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
  trim(r);
  return r;
}

Poly sub(const PrimeField& F, const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i)
    r[i] = F.sub(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
  trim(r);
  return r;
}

namespace {

// Returns (quotient, remainder).
std::pair<Poly, Poly> divmod(const PrimeField& F, Poly a, const Poly& m) {
  require(!m.empty(), ErrorKind::Inconsistent, "polynomial division by zero");
  trim(a);
  if (a.size() < m.size())
    return {{}, a};
  Scalar lead_inv = F.inv(m.back());
  Poly q(a.size() - m.size() + 1, 0);
  for (std::size_t k = a.size(); k-- >= m.size();) {
    Scalar c = F.mul(a[k], lead_inv);
    q[k - (m.size() - 1)] = c;
    if (c == 0)
      continue;
    for (std::size_t j = 0; j < m.size(); ++j) {
      std::size_t idx = k - (m.size() - 1) + j;
      a[idx] = F.sub(a[idx], F.mul(c, m[j]));
    }
  }
  a.resize(m.size() - 1);
  trim(a);
  trim(q);
  return {q, a};
}

} // namespace

Poly mod(const PrimeField& F, Poly a, const Poly& m) { return divmod(F, std::move(a), m).second; }
Poly divide(const PrimeField& F, Poly a, const Poly& m) { return divmod(F, std::move(a), m).first; }

Poly monic(const PrimeField& F, Poly f) {
  trim(f);
  if (f.empty())
    return f;
  Scalar s = F.inv(f.back());
  for (auto& c : f)
    c = F.mul(c, s);
  return f;
}

Poly gcd(const PrimeField& F, Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = mod(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(F, a);
}

Poly powmod(const PrimeField& F, Poly base, std::uint64_t e, const Poly& m) {
  Poly result = mod(F, Poly{1}, m);
  base = mod(F, base, m);
  while (e) {
    if (e & 1)
      result = mod(F, mul(F, result, base), m);
    e >>= 1;
    if (e)
      base = mod(F, mul(F, base, base), m);
  }
  return result;
}

Scalar eval(const PrimeField& F, const Poly& f, Scalar x) {
  Scalar r = 0;
  for (std::size_t k = f.size(); k-- > 0;)
    r = F.add(F.mul(r, x), f[k]);
  return r;
}

namespace {

constexpr Scalar kBruteForceLimit = 65536;

void split_into(const PrimeField& F, const Poly& f, std::vector<Scalar>& out) {
  std::size_t deg = f.size() - 1;
  if (deg == 0)
    return;
  if (deg == 1) {
    out.push_back(F.neg(F.mul(f[0], F.inv(f[1]))));
    return;
  }
  // Deterministic equal-degree splitting: gcd(f, (x + a)^((p-1)/2) - 1) for a = 0, 1, ...
  std::uint64_t half = (std::uint64_t(F.p()) - 1) / 2;
  for (Scalar a = 0; a < F.p(); ++a) {
    Poly h = powmod(F, Poly{a, 1}, half, f);
    Poly g = gcd(F, f, sub(F, h, Poly{1}));
    std::size_t dg = g.empty() ? 0 : g.size() - 1;
    if (dg > 0 && dg < deg) {
      split_into(F, g, out);
      split_into(F, monic(F, divide(F, f, g)), out);
      return;
    }
  }
  fail(ErrorKind::Inconsistent, "failed to split polynomial over F_p");
}

} // namespace

std::vector<Scalar> split_roots(const PrimeField& F, const Poly& f_in) {
  Poly f = monic(F, f_in);
  require(!f.empty(), ErrorKind::Inconsistent, "root search on the zero polynomial");
  std::size_t deg = f.size() - 1;
  std::vector<Scalar> roots;
  if (F.p() <= kBruteForceLimit) {
    for (Scalar x = 0; x < F.p() && roots.size() < deg; ++x)
      if (eval(F, f, x) == 0)
        roots.push_back(x);
  } else {
    // Keep only the part of f that splits: gcd(f, x^p - x).
    Poly xp = powmod(F, Poly{0, 1}, F.p(), f);
    Poly split = gcd(F, f, sub(F, xp, Poly{0, 1}));
    require(split.size() == f.size(), ErrorKind::Inconsistent, "polynomial does not split over F_p");
    split_into(F, split, roots);
  }
  require(roots.size() == deg, ErrorKind::Inconsistent, "polynomial does not split into distinct linear factors");
  std::sort(roots.begin(), roots.end());
  return roots;
}

} // namespace gmorita::poly
