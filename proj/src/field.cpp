#include "gmorita/field.hpp"

#include "gmorita/error.hpp"

namespace gmorita {

bool is_prime(std::uint64_t n) {
  if (n < 2)
    return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0)
      return false;
  return true;
}

PrimeField::PrimeField(std::uint64_t p) : p_(0) {
  require(p >= 2 && p <= (std::uint64_t(1) << 31), ErrorKind::InvalidInput,
          "field characteristic must lie in [2, 2^31]");
  require(is_prime(p), ErrorKind::InvalidInput, "field characteristic " + std::to_string(p) + " is not prime");
  p_ = Scalar(p);
}

Scalar PrimeField::pow(Scalar a, std::uint64_t e) const {
  Scalar result = 1 % p_;
  Scalar base = a;
  while (e) {
    if (e & 1)
      result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

Scalar PrimeField::inv(Scalar a) const {
  require(a != 0, ErrorKind::InvalidInput, "inverse of zero in F_p");
  return pow(a, p_ - 2);
}

Scalar PrimeField::from_int(std::int64_t v) const {
  std::int64_t r = v % std::int64_t(p_);
  if (r < 0)
    r += p_;
  return Scalar(r);
}

} // namespace gmorita
