#pragma once

#include <cstdint>
#include <vector>

namespace gmorita {

using Scalar = std::uint32_t;
using Vec = std::vector<Scalar>;

/// Arithmetic in F_p for a prime 2 <= p <= 2^31. Values are kept reduced in [0, p).
class PrimeField {
public:
  explicit PrimeField(std::uint64_t p);

  Scalar p() const { return p_; }

  Scalar add(Scalar a, Scalar b) const {
    std::uint64_t s = std::uint64_t(a) + b;
    return Scalar(s >= p_ ? s - p_ : s);
  }
  Scalar sub(Scalar a, Scalar b) const { return a >= b ? a - b : Scalar(std::uint64_t(a) + p_ - b); }
  Scalar neg(Scalar a) const { return a == 0 ? 0 : p_ - a; }
  Scalar mul(Scalar a, Scalar b) const { return Scalar((std::uint64_t(a) * b) % p_); }
  Scalar pow(Scalar a, std::uint64_t e) const;
  Scalar inv(Scalar a) const;
  Scalar from_int(std::int64_t v) const;

  bool operator==(const PrimeField& o) const { return p_ == o.p_; }

private:
  Scalar p_;
};

bool is_prime(std::uint64_t n);

} // namespace gmorita
