#include "gmorita/algebra.hpp"

#include <algorithm>
#include <random>

#include "gmorita/error.hpp"
#include "poly.hpp"

namespace gmorita {

Algebra::Algebra(PrimeField F, std::size_t dim, std::vector<SparseVec> products, Vec unit,
                 std::vector<std::string> labels)
    : F_(F), dim_(dim), products_(std::move(products)), unit_(std::move(unit)), labels_(std::move(labels)) {
  require(dim_ > 0, ErrorKind::InvalidInput, "algebra must have positive dimension");
  require(products_.size() == dim_ * dim_, ErrorKind::InvalidInput, "structure constant table has wrong size");
  require(unit_.size() == dim_, ErrorKind::InvalidInput, "unit has wrong length");
  for (auto& sv : products_) {
    for (auto& [k, c] : sv) {
      require(k < dim_, ErrorKind::InvalidInput, "structure constant index out of range");
      require(c < F_.p(), ErrorKind::InvalidInput, "structure constant not reduced mod p");
    }
    std::sort(sv.begin(), sv.end());
    sv.erase(std::remove_if(sv.begin(), sv.end(), [](const auto& t) { return t.second == 0; }), sv.end());
  }
  if (labels_.empty())
    for (std::size_t i = 0; i < dim_; ++i)
      labels_.push_back("e" + std::to_string(i));
  require(labels_.size() == dim_, ErrorKind::InvalidInput, "wrong number of basis labels");
}

Vec Algebra::mul(std::span<const Scalar> a, std::span<const Scalar> b) const {
  Vec r(dim_, 0);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (a[i] == 0)
      continue;
    for (std::size_t j = 0; j < dim_; ++j) {
      if (b[j] == 0)
        continue;
      Scalar c = F_.mul(a[i], b[j]);
      for (auto [k, s] : product(i, j))
        r[k] = F_.add(r[k], F_.mul(c, s));
    }
  }
  return r;
}

Vec Algebra::pow(const Vec& a, std::uint64_t e) const {
  Vec result = unit_, base = a;
  while (e) {
    if (e & 1)
      result = mul(result, base);
    e >>= 1;
    if (e)
      base = mul(base, base);
  }
  return result;
}

std::optional<Vec> Algebra::inverse(const Vec& a) const {
  // Solve a x = 1 and confirm x a = 1.
  auto x = solve(F_, left_mult(a), unit_);
  if (!x || mul(*x, a) != unit_)
    return std::nullopt;
  return x;
}

Matrix Algebra::left_mult(std::span<const Scalar> a) const {
  Matrix m(dim_, dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (a[i] == 0)
      continue;
    for (std::size_t j = 0; j < dim_; ++j)
      for (auto [k, s] : product(i, j))
        m(k, j) = F_.add(m(k, j), F_.mul(a[i], s));
  }
  return m;
}

Matrix Algebra::right_mult(std::span<const Scalar> a) const {
  Matrix m(dim_, dim_);
  for (std::size_t j = 0; j < dim_; ++j) {
    if (a[j] == 0)
      continue;
    for (std::size_t i = 0; i < dim_; ++i)
      for (auto [k, s] : product(i, j))
        m(k, i) = F_.add(m(k, i), F_.mul(a[j], s));
  }
  return m;
}

bool Algebra::is_commutative() const {
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = i + 1; j < dim_; ++j)
      if (product(i, j) != product(j, i))
        return false;
  return true;
}

bool Algebra::is_central(std::span<const Scalar> z) const {
  for (std::size_t i = 0; i < dim_; ++i) {
    Vec b = basis(i);
    if (mul(z, b) != mul(b, z))
      return false;
  }
  return true;
}

bool Algebra::is_idempotent(std::span<const Scalar> e) const {
  return mul(e, e) == Vec(e.begin(), e.end());
}

bool Algebra::same_structure(const Algebra& o) const {
  return F_ == o.F_ && dim_ == o.dim_ && products_ == o.products_ && unit_ == o.unit_;
}

Algebra Algebra::opposite() const {
  std::vector<SparseVec> prods(dim_ * dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j)
      prods[i * dim_ + j] = product(j, i);
  return Algebra(F_, dim_, std::move(prods), unit_, labels_);
}

void validate_algebra(const Algebra& A) {
  const std::size_t n = A.dim();
  for (std::size_t i = 0; i < n; ++i) {
    Vec b = A.basis(i);
    require(A.mul(A.unit(), b) == b && A.mul(b, A.unit()) == b, ErrorKind::InvalidInput,
            "unit is not a two-sided identity on basis element " + A.labels()[i]);
  }
  auto check = [&](std::size_t i, std::size_t j, std::size_t k) {
    Vec a = A.basis(i), b = A.basis(j), c = A.basis(k);
    require(A.mul(A.mul(a, b), c) == A.mul(a, A.mul(b, c)), ErrorKind::InvalidInput,
            "multiplication is not associative on (" + A.labels()[i] + ", " + A.labels()[j] + ", " +
                A.labels()[k] + ")");
  };
  if (n <= 48) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          check(i, j, k);
  } else {
    std::mt19937_64 rng(n);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (int t = 0; t < 20000; ++t)
      check(pick(rng), pick(rng), pick(rng));
  }
}

AlgebraRef ground_algebra(const PrimeField& F) {
  return std::make_shared<const Algebra>(F, 1, std::vector<SparseVec>{{{0, 1}}}, Vec{1}, std::vector<std::string>{"1"});
}

Vec Subalgebra::to_parent(std::span<const Scalar> x) const { return coords.combine(x); }

std::optional<Vec> Subalgebra::from_parent(std::span<const Scalar> y) const { return coords.coords(y); }

Subalgebra make_subalgebra(const Algebra& parent, const Matrix& spanning, std::span<const Scalar> unit_in_parent) {
  const PrimeField& F = parent.field();
  Matrix basis = row_basis(F, spanning);
  require(basis.rows() > 0, ErrorKind::Precondition, "subalgebra spanning set is zero");
  Coordinatizer coords(F, basis);
  const std::size_t d = basis.rows();

  auto unit = coords.coords(unit_in_parent);
  require(unit.has_value(), ErrorKind::Precondition, "subalgebra unit is not in the span");

  std::vector<SparseVec> prods(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      Vec p = parent.mul(basis.row(i), basis.row(j));
      auto c = coords.coords(p);
      require(c.has_value(), ErrorKind::Precondition, "spanning set is not closed under multiplication");
      for (std::size_t k = 0; k < d; ++k)
        if ((*c)[k])
          prods[i * d + j].push_back({std::uint32_t(k), (*c)[k]});
    }
  auto alg = std::make_shared<const Algebra>(F, d, std::move(prods), *unit);
  for (std::size_t i = 0; i < d; ++i) {
    Vec b = alg->basis(i);
    require(alg->mul(*unit, b) == b && alg->mul(b, *unit) == b, ErrorKind::Precondition,
            "given element is not a unit of the subalgebra");
  }
  return Subalgebra{alg, basis, coords};
}

Algebra group_algebra(const FiniteGroup& G, const PrimeField& F) {
  const std::size_t n = G.order();
  std::vector<SparseVec> prods(n * n);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      prods[a * n + b] = {{G.mul(a, b), 1}};
  return Algebra(F, n, std::move(prods), group_element(G, G.identity()), G.labels());
}

Vec group_element(const FiniteGroup& G, Elem g) { return unit_vector(G.order(), g); }

Matrix center(const Algebra& A) {
  const std::size_t n = A.dim();
  const PrimeField& F = A.field();
  // Unknown z; for each basis element e_i the coordinates of z e_i - e_i z vanish.
  Matrix eqs(n * n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      for (auto [c, s] : A.product(k, i))
        eqs(i * n + c, k) = F.add(eqs(i * n + c, k), s);
      for (auto [c, s] : A.product(i, k))
        eqs(i * n + c, k) = F.sub(eqs(i * n + c, k), s);
    }
  return nullspace(F, eqs);
}

namespace {

// Coefficients (low degree first, monic) of the minimal polynomial of x.
poly::Poly minimal_polynomial(const Algebra& Z, const Vec& x) {
  const PrimeField& F = Z.field();
  std::vector<Vec> powers{Z.unit()};
  while (true) {
    Vec next = Z.mul(powers.back(), x);
    Matrix cols = Matrix::from_columns(powers, Z.dim());
    if (auto c = solve(F, cols, next)) {
      poly::Poly f(powers.size() + 1, 0);
      for (std::size_t i = 0; i < powers.size(); ++i)
        f[i] = F.neg((*c)[i]);
      f.back() = 1;
      return f;
    }
    powers.push_back(std::move(next));
  }
}

bool coords_less(const Vec& a, const Vec& b) { return a < b; }

} // namespace

BlockDecomposition primitive_central_idempotents(const Algebra& A) {
  const PrimeField& F = A.field();
  Subalgebra Zsub = make_subalgebra(A, center(A), A.unit());
  const Algebra& Z = *Zsub.algebra;
  const std::size_t r = Z.dim();

  // Frobenius z -> z^p is F_p-linear on the commutative algebra Z. Its fixed
  // space is the span of the primitive idempotents.
  Matrix frob(r, r);
  for (std::size_t i = 0; i < r; ++i) {
    Vec fi = Z.pow(Z.basis(i), F.p());
    for (std::size_t k = 0; k < r; ++k)
      frob(k, i) = fi[k];
  }
  Matrix K = nullspace(F, sub(F, frob, Matrix::identity(r)));
  const std::size_t s = K.rows();

  std::vector<Vec> idems{Z.unit()};
  for (std::size_t t = 0; t < s && idems.size() < s; ++t) {
    Vec k = K.row_vec(t);
    auto roots = poly::split_roots(F, minimal_polynomial(Z, k));
    std::vector<Vec> refined;
    for (const Vec& e : idems) {
      for (Scalar c : roots) {
        // 1 - (k - c)^(p-1) is the idempotent where k takes the value c.
        Vec shifted = sub(F, k, scale(F, c, Z.unit()));
        Vec ind = sub(F, Z.unit(), Z.pow(shifted, F.p() - 1));
        Vec f = Z.mul(e, ind);
        if (!is_zero(f))
          refined.push_back(std::move(f));
      }
    }
    idems = std::move(refined);
  }
  require(idems.size() == s, ErrorKind::Inconsistent, "idempotent refinement did not reach the expected count");

  BlockDecomposition out;
  std::vector<std::pair<std::size_t, Vec>> sorted;
  for (const Vec& e : idems) {
    Vec ep = Zsub.to_parent(e);
    sorted.push_back({rank(F, A.left_mult(ep)), ep});
  }
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first < b.first : coords_less(a.second, b.second);
  });
  for (auto& [d, e] : sorted) {
    out.block_dims.push_back(d);
    out.idempotents.push_back(std::move(e));
  }
  std::string problem = check_block_decomposition(A, out);
  require(problem.empty(), ErrorKind::Inconsistent, "block decomposition failed certification: " + problem);
  return out;
}

std::string check_block_decomposition(const Algebra& A, const BlockDecomposition& blocks) {
  const PrimeField& F = A.field();
  Vec total = A.zero();
  std::size_t dim_sum = 0;
  for (std::size_t i = 0; i < blocks.idempotents.size(); ++i) {
    const Vec& e = blocks.idempotents[i];
    if (is_zero(e))
      return "idempotent " + std::to_string(i) + " is zero";
    if (!A.is_idempotent(e))
      return "element " + std::to_string(i) + " is not idempotent";
    if (!A.is_central(e))
      return "idempotent " + std::to_string(i) + " is not central";
    for (std::size_t j = 0; j < blocks.idempotents.size(); ++j)
      if (j != i && !is_zero(A.mul(e, blocks.idempotents[j])))
        return "idempotents " + std::to_string(i) + " and " + std::to_string(j) + " are not orthogonal";
    // Primitive iff the center of eA contains no idempotent besides 0 and e,
    // which is the case iff the Frobenius-fixed part of Z(eA) is 1-dimensional.
    Subalgebra blk = block_cut(A, e);
    Subalgebra zb = make_subalgebra(*blk.algebra, center(*blk.algebra), blk.algebra->unit());
    const Algebra& Z = *zb.algebra;
    Matrix frob(Z.dim(), Z.dim());
    for (std::size_t c = 0; c < Z.dim(); ++c) {
      Vec fc = Z.pow(Z.basis(c), F.p());
      for (std::size_t k = 0; k < Z.dim(); ++k)
        frob(k, c) = fc[k];
    }
    if (nullspace(F, sub(F, frob, Matrix::identity(Z.dim()))).rows() != 1)
      return "idempotent " + std::to_string(i) + " is not primitive";
    std::size_t d = blk.basis.rows();
    if (i < blocks.block_dims.size() && blocks.block_dims[i] != d)
      return "block " + std::to_string(i) + " has the wrong recorded dimension";
    dim_sum += d;
    total = add(F, total, e);
  }
  if (total != A.unit())
    return "idempotents do not sum to 1";
  if (dim_sum != A.dim())
    return "block dimensions do not sum to dim A";
  return {};
}

Subalgebra block_cut(const Algebra& A, std::span<const Scalar> e) {
  require(A.is_idempotent(e), ErrorKind::Precondition, "block_cut: element is not idempotent");
  require(A.is_central(e), ErrorKind::Precondition, "block_cut: idempotent is not central");
  require(!is_zero(e), ErrorKind::Precondition, "block_cut: idempotent is zero");
  return make_subalgebra(A, transpose(A.left_mult(e)), e);
}

Subalgebra centralizer_subalgebra(const Algebra& A, const Matrix& B_basis) {
  const PrimeField& F = A.field();
  const std::size_t n = A.dim();
  require(B_basis.cols() == n, ErrorKind::InvalidInput, "subalgebra basis has wrong width");
  // Validates closure and unitality of B.
  make_subalgebra(A, B_basis, A.unit());

  Matrix eqs(0, n);
  for (std::size_t k = 0; k < B_basis.rows(); ++k) {
    Matrix d = sub(F, A.right_mult(B_basis.row(k)), A.left_mult(B_basis.row(k)));
    eqs = vstack(eqs, d);
  }
  return make_subalgebra(A, nullspace(F, eqs), A.unit());
}

bool is_invariant_block(const FiniteGroup& G, const Subgroup& N, const PrimeField& F, std::span<const Scalar> e) {
  require(e.size() == G.order(), ErrorKind::InvalidInput, "idempotent has wrong length");
  for (Elem g = 0; g < G.order(); ++g)
    require(e[g] == 0 || N.contains(g), ErrorKind::Precondition, "idempotent is not supported on N");
  Algebra kG = group_algebra(G, F);
  require(kG.is_idempotent(e), ErrorKind::Precondition, "element is not idempotent");
  for (Elem n : N.elements) {
    Vec nv = group_element(G, n);
    require(kG.mul(e, nv) == kG.mul(nv, e), ErrorKind::Precondition, "idempotent is not central in kN");
  }
  for (Elem g = 0; g < G.order(); ++g) {
    for (Elem x = 0; x < G.order(); ++x)
      if (e[G.conj(g, x)] != e[x])
        return false;
  }
  return true;
}

BlockDecomposition subgroup_blocks(const FiniteGroup& G, const Subgroup& N, const PrimeField& F) {
  SubgroupAsGroup local = subgroup_as_group(G, N);
  Algebra kN = group_algebra(local.group, F);
  BlockDecomposition blocks = primitive_central_idempotents(kN);
  for (Vec& e : blocks.idempotents) {
    Vec big(G.order(), 0);
    for (std::size_t i = 0; i < e.size(); ++i)
      big[local.to_parent[i]] = e[i];
    e = std::move(big);
  }
  return blocks;
}

} // namespace gmorita
