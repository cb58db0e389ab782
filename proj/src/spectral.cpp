#include "ambra/spectral.hpp"

#include <algorithm>
#include <numeric>

#include "ambra/error.hpp"

namespace ambra {

SpectrumReport spectrum(const Matrix& a) {
  if (!a.is_square()) raise(ErrorKind::NonSquare, "spectrum");
  Polynomial cp = charpoly(a);
  auto factors = factor_over_K(cp);
  SplittingFieldResult sf = splitting_field(squarefree_part(cp));
  std::vector<std::pair<FieldElement, int>> eigen;
  for (const auto& [h, mult] : factors) {
    Polynomial hl = h.map_coefficients(sf.embedding);
    for (const auto& root : sf.roots) {
      if (hl.eval(root).is_zero()) eigen.emplace_back(root, mult);
    }
  }
  std::sort(eigen.begin(), eigen.end(),
            [](const auto& x, const auto& y) { return FieldElement::cmp(x.first, y.first) < 0; });
  int total = 0;
  for (const auto& [v, m] : eigen) total += m;
  if (total != a.rows()) raise(ErrorKind::Internal, "eigenvalue multiplicities do not sum");
  return {a, sf.field, sf.embedding, std::move(eigen), is_diagonalizable(a)};
}

std::optional<unsigned long> power_splitting_exponent(const Matrix& a) {
  if (!a.is_square()) raise(ErrorKind::NonSquare, "power_splitting_exponent");
  if (!a.invertible()) raise(ErrorKind::Singular, "power splitting needs an invertible matrix");
  unsigned long m = 1;
  for (const auto& [h, mult] : factor_over_K(charpoly(a))) {
    (void)mult;
    auto r = power_split_of_factor(h);
    if (!r) return std::nullopt;
    m = std::lcm(m, r->exponent);
  }
  return m;
}

namespace {

// Distinct irreducible factors of the characteristic polynomial.
std::vector<Polynomial> charpoly_factors(const Matrix& a) {
  std::vector<Polynomial> out;
  for (const auto& [h, mult] : factor_over_K(charpoly(a))) {
    (void)mult;
    out.push_back(h);
  }
  return out;
}

}  // namespace

bool is_steady(const Matrix& a) {
  if (!a.is_square()) raise(ErrorKind::NonSquare, "is_steady");
  if (!a.invertible()) raise(ErrorKind::Singular, "steadiness needs an invertible matrix");
  std::vector<FieldElement> eigen;
  for (const auto& h : charpoly_factors(a)) {
    if (h.degree() != 1) return false;  // eigenvalue outside the base field
    eigen.push_back(-h.coeff(0));
  }
  for (size_t i = 0; i < eigen.size(); ++i)
    for (size_t j = i + 1; j < eigen.size(); ++j)
      if (root_of_unity_order(eigen[i] / eigen[j]).has_value()) return false;
  return true;
}

std::optional<unsigned long> steady_exponent(const Matrix& a) {
  if (!a.is_square()) raise(ErrorKind::NonSquare, "steady_exponent");
  if (!a.invertible()) raise(ErrorKind::Singular, "steady exponent needs an invertible matrix");
  auto factors = charpoly_factors(a);
  unsigned long n = 1;
  // Power-splitting part.
  for (const auto& h : factors) {
    auto r = power_split_of_factor(h);
    if (!r) return std::nullopt;
    n = std::lcm(n, r->exponent);
  }
  // Root-of-unity ratio orders across all (unordered) factor pairs, including
  // conjugate ratios within one factor.
  for (size_t i = 0; i < factors.size(); ++i) {
    for (size_t j = i; j < factors.size(); ++j) {
      if (factors[i].degree() == 1 && factors[j].degree() == 1) {
        if (i == j) continue;
        FieldElement ratio = factors[i].coeff(0) / factors[j].coeff(0);
        if (auto ord = root_of_unity_order(ratio)) n = std::lcm(n, *ord);
        continue;
      }
      RatioOrders ro = ratio_root_of_unity_orders(factors[i], factors[j]);
      for (unsigned long t : ro.orders) n = std::lcm(n, t);
    }
  }
  return n;
}

SteadyAnalysis analyze_steady(const Matrix& a) {
  auto pse = power_splitting_exponent(a);
  auto se = steady_exponent(a);
  bool steady = se.has_value() && *se == 1;
  return {a, pse, se, steady};
}

std::vector<std::pair<FieldElement, Subspace>> steady_eigenspaces(const Matrix& a) {
  if (!is_steady(a)) raise(ErrorKind::NotSteady, "matrix is not steady");
  std::vector<std::pair<FieldElement, Subspace>> out;
  for (const auto& h : charpoly_factors(a)) {
    FieldElement lambda = -h.coeff(0);
    out.emplace_back(lambda, eigenspace(a, lambda));
  }
  std::sort(out.begin(), out.end(),
            [](const auto& x, const auto& y) { return FieldElement::cmp(x.first, y.first) < 0; });
  return out;
}

Decomposition joint_eigenspace_decomposition(const std::vector<Matrix>& steadies) {
  if (steadies.empty()) raise(ErrorKind::InvalidDecomposition, "no steady matrices given");
  const int n = steadies[0].rows();
  const FieldPtr& f = steadies[0].field();
  Decomposition d = Decomposition::single_full(f, n);
  for (const auto& s : steadies) {
    std::vector<Subspace> eig;
    for (auto& [lambda, space] : steady_eigenspaces(s)) eig.push_back(space);
    d = refine_decomposition(d, eig);
    if (d.partial) return d;
  }
  return d;
}

std::optional<FieldElement> scalar_on_piece(const Matrix& a, const Subspace& piece) {
  if (piece.is_zero()) return std::nullopt;
  const FieldPtr& f = a.field();
  const int n = piece.ambient_dim();
  Matrix b0(f, n, 1);
  for (int j = 0; j < n; ++j) b0.at(j, 0) = piece.basis().at(0, j);
  Matrix img = a * b0;
  // Determine candidate scalar from the pivot coordinate of the first basis row.
  int pivot = -1;
  for (int j = 0; j < n; ++j)
    if (!piece.basis().at(0, j).is_zero()) {
      pivot = j;
      break;
    }
  FieldElement lambda = img.at(pivot, 0) / piece.basis().at(0, pivot);
  // Verify on all basis vectors.
  for (int i = 0; i < piece.dim(); ++i) {
    Matrix v(f, n, 1);
    for (int j = 0; j < n; ++j) v.at(j, 0) = piece.basis().at(i, j);
    if (a * v != v.scaled(lambda)) return std::nullopt;
  }
  return lambda;
}

SeparatingElement separating_element(const std::vector<Matrix>& steadies, const Decomposition& d,
                                     long radius_cap) {
  if (steadies.empty() || d.partial || d.pieces.empty())
    raise(ErrorKind::InvalidDecomposition, "separating element needs a total decomposition");
  const FieldPtr& f = steadies[0].field();
  const size_t r = d.pieces.size();
  const size_t m = steadies.size();
  // Scalars of each steady on each piece (required precondition).
  std::vector<std::vector<FieldElement>> lambda(r, std::vector<FieldElement>());
  for (size_t i = 0; i < r; ++i) {
    for (size_t j = 0; j < m; ++j) {
      auto s = scalar_on_piece(steadies[j], d.pieces[i]);
      if (!s) raise(ErrorKind::InvalidDecomposition, "steady matrix is not scalar on a piece");
      lambda[i].push_back(*s);
    }
  }
  auto candidate_scalars = [&](const std::vector<long>& exps) {
    std::vector<FieldElement> mu;
    mu.reserve(r);
    for (size_t i = 0; i < r; ++i) {
      FieldElement acc = FieldElement::one(f);
      for (size_t j = 0; j < m; ++j)
        if (exps[j] != 0) acc = acc * lambda[i][j].pow(Integer(exps[j]));
      mu.push_back(acc);
    }
    return mu;
  };
  auto valid = [&](const std::vector<FieldElement>& mu) {
    for (size_t i = 0; i < r; ++i)
      for (size_t j = i + 1; j < r; ++j) {
        if (mu[i] == mu[j]) return false;
        if (root_of_unity_order(mu[i] / mu[j]).has_value()) return false;
      }
    return true;
  };
  // Shells by max-norm; inside a shell, components run descending from +rad.
  for (long rad = 0; rad <= radius_cap; ++rad) {
    std::vector<long> exps(m, rad);
    for (;;) {
      long maxabs = 0;
      for (long e : exps) maxabs = std::max(maxabs, std::labs(e));
      if (maxabs == rad) {
        auto mu = candidate_scalars(exps);
        if (valid(mu)) {
          Matrix prod = Matrix::identity(f, d.ambient_dim());
          for (size_t j = 0; j < m; ++j)
            if (exps[j] != 0) prod = prod * steadies[j].pow(Integer(exps[j]));
          return {prod, exps, mu};
        }
      }
      // next vector in descending component order
      size_t pos = m;
      while (pos > 0) {
        --pos;
        if (exps[pos] > -rad) {
          --exps[pos];
          for (size_t k = pos + 1; k < m; ++k) exps[k] = rad;
          break;
        }
        if (pos == 0) {
          pos = m + 1;  // done with shell
          break;
        }
      }
      if (pos == m + 1 || m == 0) break;
    }
    if (m == 0) break;
  }
  raise(ErrorKind::SearchBudgetExceeded, "separating-element radius cap reached");
}

}  // namespace ambra
