#include "ambra/zassenhaus.hpp"

#include <algorithm>
#include <cstdint>
#include <random>

#include "ambra/error.hpp"

namespace ambra {
namespace {

int zp_deg(const ZPoly& p) { return static_cast<int>(p.size()) - 1; }

void zp_trim(ZPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// ---------------------------------------------------------------------------
// Arithmetic mod a small prime p (fits in 63 bits).
// ---------------------------------------------------------------------------

using FpPoly = std::vector<std::uint64_t>;

std::uint64_t addm(std::uint64_t a, std::uint64_t b, std::uint64_t p) { return (a + b) % p; }
std::uint64_t subm(std::uint64_t a, std::uint64_t b, std::uint64_t p) { return (a + p - b) % p; }
std::uint64_t mulm(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}
std::uint64_t powm(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  while (e) {
    if (e & 1) r = mulm(r, a, p);
    a = mulm(a, a, p);
    e >>= 1;
  }
  return r;
}
std::uint64_t invm(std::uint64_t a, std::uint64_t p) { return powm(a % p, p - 2, p); }

void fp_trim(FpPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

int fp_deg(const FpPoly& f) { return static_cast<int>(f.size()) - 1; }

FpPoly fp_mul(const FpPoly& a, const FpPoly& b, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  FpPoly c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (size_t j = 0; j < b.size(); ++j) c[i + j] = addm(c[i + j], mulm(a[i], b[j], p), p);
  }
  fp_trim(c);
  return c;
}

FpPoly fp_mod(FpPoly a, const FpPoly& m, std::uint64_t p) {
  fp_trim(a);
  std::uint64_t lcinv = invm(m.back(), p);
  while (fp_deg(a) >= fp_deg(m)) {
    std::uint64_t f = mulm(a.back(), lcinv, p);
    int shift = fp_deg(a) - fp_deg(m);
    for (size_t i = 0; i < m.size(); ++i) a[i + shift] = subm(a[i + shift], mulm(f, m[i], p), p);
    fp_trim(a);
    if (a.empty()) break;
  }
  return a;
}

FpPoly fp_mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& m, std::uint64_t p) {
  return fp_mod(fp_mul(a, b, p), m, p);
}

FpPoly fp_gcd(FpPoly a, FpPoly b, std::uint64_t p) {
  fp_trim(a);
  fp_trim(b);
  while (!b.empty()) {
    FpPoly r = fp_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty() && a.back() != 1) {
    std::uint64_t inv = invm(a.back(), p);
    for (auto& c : a) c = mulm(c, inv, p);
  }
  return a;
}

FpPoly fp_make_monic(FpPoly f, std::uint64_t p) {
  fp_trim(f);
  if (f.empty() || f.back() == 1) return f;
  std::uint64_t inv = invm(f.back(), p);
  for (auto& c : f) c = mulm(c, inv, p);
  return f;
}

FpPoly fp_powmod_big(const FpPoly& a, const Integer& e, const FpPoly& m, std::uint64_t p) {
  FpPoly acc{1}, base = fp_mod(a, m, p);
  Integer n = e;
  while (n > 0) {
    if (mpz_odd_p(n.get_mpz_t())) acc = fp_mulmod(acc, base, m, p);
    n >>= 1;
    if (n > 0) base = fp_mulmod(base, base, m, p);
  }
  return acc;
}

FpPoly fp_derivative(const FpPoly& f, std::uint64_t p) {
  if (f.size() <= 1) return {};
  FpPoly d(f.size() - 1);
  for (size_t i = 1; i < f.size(); ++i) d[i - 1] = mulm(f[i], i % p, p);
  fp_trim(d);
  return d;
}

FpPoly fp_div_exact(const FpPoly& a, const FpPoly& b, std::uint64_t p) {
  FpPoly rem = a, q(std::max<int>(0, fp_deg(a) - fp_deg(b)) + 1, 0);
  std::uint64_t lcinv = invm(b.back(), p);
  while (fp_deg(rem) >= fp_deg(b) && !rem.empty()) {
    std::uint64_t f = mulm(rem.back(), lcinv, p);
    int shift = fp_deg(rem) - fp_deg(b);
    q[shift] = f;
    for (size_t i = 0; i < b.size(); ++i) rem[i + shift] = subm(rem[i + shift], mulm(f, b[i], p), p);
    fp_trim(rem);
  }
  fp_trim(q);
  return q;
}

// Distinct-degree factorization of a monic squarefree f mod p.
std::vector<std::pair<FpPoly, int>> fp_ddf(FpPoly f, std::uint64_t p) {
  std::vector<std::pair<FpPoly, int>> out;
  FpPoly h{0, 1};  // x
  int d = 0;
  while (fp_deg(f) >= 2 * (d + 1)) {
    ++d;
    h = fp_powmod_big(h, Integer(static_cast<unsigned long>(p)), f, p);
    FpPoly hx = h;
    if (hx.size() < 2) hx.resize(2, 0);
    hx[1] = subm(hx[1], 1, p);
    fp_trim(hx);
    FpPoly g = fp_gcd(f, hx, p);
    if (fp_deg(g) > 0) {
      out.emplace_back(g, d);
      f = fp_div_exact(f, g, p);
      h = fp_mod(h, f, p);
    }
  }
  if (fp_deg(f) > 0) out.emplace_back(f, fp_deg(f));
  return out;
}

// Equal-degree splitting (Cantor–Zassenhaus, p odd) with deterministic RNG.
void fp_edf(const FpPoly& f, int d, std::uint64_t p, std::mt19937_64& rng, std::vector<FpPoly>& out) {
  int k = fp_deg(f) / d;
  if (k == 1) {
    out.push_back(fp_make_monic(f, p));
    return;
  }
  Integer pd;
  mpz_ui_pow_ui(pd.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(d));
  Integer e = (pd - 1) / 2;
  for (;;) {
    FpPoly r(fp_deg(f), 0);
    for (auto& c : r) c = rng() % p;
    fp_trim(r);
    if (fp_deg(r) < 1) continue;
    FpPoly s = fp_powmod_big(r, e, f, p);
    if (s.empty()) continue;
    s[0] = subm(s[0], 1, p);
    fp_trim(s);
    FpPoly g = fp_gcd(f, s, p);
    if (fp_deg(g) > 0 && fp_deg(g) < fp_deg(f)) {
      fp_edf(g, d, p, rng, out);
      fp_edf(fp_div_exact(f, g, p), d, p, rng, out);
      return;
    }
  }
}

std::vector<FpPoly> fp_factor_squarefree(const FpPoly& f, std::uint64_t p) {
  std::mt19937_64 rng(0x5eed);  // fixed: byte-deterministic output
  std::vector<FpPoly> out;
  for (const auto& [g, d] : fp_ddf(f, p)) fp_edf(g, d, p, rng, out);
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Arithmetic mod m = p^k (big modulus), coefficients in [0, m).
// ---------------------------------------------------------------------------

using MPoly = std::vector<Integer>;

Integer symmetric_mod(const Integer& a, const Integer& m) {
  Integer r = a % m;
  if (r < 0) r += m;
  if (2 * r > m) r -= m;
  return r;
}

void mp_reduce(MPoly& f, const Integer& m) {
  for (auto& c : f) {
    c %= m;
    if (c < 0) c += m;
  }
  zp_trim(f);
}

MPoly mp_mul(const MPoly& a, const MPoly& b, const Integer& m) {
  if (a.empty() || b.empty()) return {};
  MPoly c(a.size() + b.size() - 1, Integer(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  }
  mp_reduce(c, m);
  return c;
}

MPoly mp_add(const MPoly& a, const MPoly& b, const Integer& m) {
  MPoly c(std::max(a.size(), b.size()), Integer(0));
  for (size_t i = 0; i < a.size(); ++i) c[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) c[i] += b[i];
  mp_reduce(c, m);
  return c;
}

MPoly mp_sub(const MPoly& a, const MPoly& b, const Integer& m) {
  MPoly c(std::max(a.size(), b.size()), Integer(0));
  for (size_t i = 0; i < a.size(); ++i) c[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) c[i] -= b[i];
  mp_reduce(c, m);
  return c;
}

// Division by a *monic* divisor mod m.
std::pair<MPoly, MPoly> mp_divmod_monic(MPoly a, const MPoly& b, const Integer& m) {
  mp_reduce(a, m);
  MPoly q(std::max<int>(0, zp_deg(a) - zp_deg(b)) + 1, Integer(0));
  while (zp_deg(a) >= zp_deg(b) && !a.empty()) {
    Integer f = a.back();
    int shift = zp_deg(a) - zp_deg(b);
    q[shift] = f;
    for (size_t i = 0; i < b.size(); ++i) {
      a[i + shift] -= f * b[i];
    }
    mp_reduce(a, m);
  }
  zp_trim(q);
  return {q, a};
}

// Extended Euclid mod p for coprime (g, h): s*g + t*h = 1.
void fp_bezout(const FpPoly& g, const FpPoly& h, std::uint64_t p, FpPoly& s, FpPoly& t) {
  FpPoly r0 = g, r1 = h;
  FpPoly s0{1}, s1{}, t0{}, t1{1};
  while (!r1.empty()) {
    FpPoly q = fp_div_exact(r0, r1, p);
    FpPoly r2 = fp_mod(r0, r1, p);
    FpPoly s2 = s0, t2 = t0;
    FpPoly qs = fp_mul(q, s1, p), qt = fp_mul(q, t1, p);
    // s2 = s0 - q s1, t2 = t0 - q t1
    s2.resize(std::max(s2.size(), qs.size()), 0);
    for (size_t i = 0; i < qs.size(); ++i) s2[i] = subm(s2[i], qs[i], p);
    t2.resize(std::max(t2.size(), qt.size()), 0);
    for (size_t i = 0; i < qt.size(); ++i) t2[i] = subm(t2[i], qt[i], p);
    fp_trim(s2);
    fp_trim(t2);
    r0 = std::move(r1);
    r1 = std::move(r2);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.size() != 1) raise(ErrorKind::Internal, "hensel: factors not coprime mod p");
  std::uint64_t inv = invm(r0[0], p);
  for (auto& c : s0) c = mulm(c, inv, p);
  for (auto& c : t0) c = mulm(c, inv, p);
  s = s0;
  t = t0;
}

// One quadratic Hensel step: given f = g*h (mod m), s*g + t*h = 1 (mod m),
// with f, g, h monic, produces the same data mod m^2.
void hensel_step(const MPoly& f, MPoly& g, MPoly& h, MPoly& s, MPoly& t, const Integer& m) {
  Integer m2 = m * m;
  MPoly e = mp_sub(f, mp_mul(g, h, m2), m2);
  auto [q, r] = mp_divmod_monic(mp_mul(s, e, m2), h, m2);
  MPoly gstar = mp_add(g, mp_add(mp_mul(t, e, m2), mp_mul(q, g, m2), m2), m2);
  MPoly hstar = mp_add(h, r, m2);
  // Bezout update.
  MPoly one{Integer(1)};
  MPoly b = mp_sub(mp_add(mp_mul(s, gstar, m2), mp_mul(t, hstar, m2), m2), one, m2);
  auto [c, d] = mp_divmod_monic(mp_mul(s, b, m2), hstar, m2);
  MPoly sstar = mp_sub(s, d, m2);
  MPoly tstar = mp_sub(mp_sub(t, mp_mul(t, b, m2), m2), mp_mul(c, gstar, m2), m2);
  g = std::move(gstar);
  h = std::move(hstar);
  s = std::move(sstar);
  t = std::move(tstar);
}

// Lifts the factorization f = prod(factors) (mod p), all monic, to mod target
// (a power of p), recursively splitting the factor list.
void hensel_lift_tree(const MPoly& f, const std::vector<FpPoly>& factors, size_t lo, size_t hi,
                      std::uint64_t p, const Integer& target, std::vector<MPoly>& out) {
  if (hi - lo == 1) {
    MPoly g = f;
    mp_reduce(g, target);
    out.push_back(std::move(g));
    return;
  }
  size_t mid = lo + (hi - lo) / 2;
  FpPoly gp{1}, hp{1};
  for (size_t i = lo; i < mid; ++i) gp = fp_mul(gp, factors[i], p);
  for (size_t i = mid; i < hi; ++i) hp = fp_mul(hp, factors[i], p);
  FpPoly sp, tp;
  fp_bezout(gp, hp, p, sp, tp);
  auto to_mpoly = [](const FpPoly& a) {
    MPoly r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = Integer(static_cast<unsigned long>(a[i]));
    return r;
  };
  MPoly g = to_mpoly(gp), h = to_mpoly(hp), s = to_mpoly(sp), t = to_mpoly(tp);
  Integer m(static_cast<unsigned long>(p));
  while (m < target) {
    MPoly fm = f;
    hensel_step(fm, g, h, s, t, m);
    m = m * m;
  }
  mp_reduce(g, target);
  mp_reduce(h, target);
  hensel_lift_tree(g, factors, lo, mid, p, target, out);
  hensel_lift_tree(h, factors, mid, hi, p, target, out);
}

// ---------------------------------------------------------------------------
// Integer polynomial helpers.
// ---------------------------------------------------------------------------

ZPoly z_mul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly c(a.size() + b.size() - 1, Integer(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  zp_trim(c);
  return c;
}

// Exact division test by a monic candidate; returns quotient if it divides.
bool z_divide_monic(const ZPoly& f, const ZPoly& g, ZPoly& quotient) {
  ZPoly rem = f;
  ZPoly q(std::max<int>(0, zp_deg(f) - zp_deg(g)) + 1, Integer(0));
  while (zp_deg(rem) >= zp_deg(g) && !rem.empty()) {
    Integer c = rem.back();
    int shift = zp_deg(rem) - zp_deg(g);
    q[shift] = c;
    for (size_t i = 0; i < g.size(); ++i) rem[i + shift] -= c * g[i];
    zp_trim(rem);
  }
  if (!rem.empty()) return false;
  zp_trim(q);
  quotient = std::move(q);
  return true;
}

constexpr std::uint64_t kPrimes[] = {3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
                                     43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};

}  // namespace

std::vector<ZPoly> factor_squarefree_monic_z(const ZPoly& f) {
  const int n = zp_deg(f);
  if (n < 1) raise(ErrorKind::Internal, "factor_squarefree_monic_z: degree < 1");
  if (f.back() != 1) raise(ErrorKind::Internal, "factor_squarefree_monic_z: not monic");
  if (n == 1) return {f};

  // Prime selection: among admissible primes keep the factorization with the
  // fewest modular factors.
  std::uint64_t best_p = 0;
  std::vector<FpPoly> best_factors;
  int tried = 0;
  for (std::uint64_t p : kPrimes) {
    FpPoly fp(f.size());
    for (size_t i = 0; i < f.size(); ++i) {
      Integer c = f[i] % static_cast<long>(p);
      if (c < 0) c += static_cast<long>(p);
      fp[i] = c.get_ui();
    }
    fp_trim(fp);
    if (fp_deg(fp) != n) continue;  // cannot happen for monic f; kept for safety
    FpPoly g = fp_gcd(fp, fp_derivative(fp, p), p);
    if (fp_deg(g) != 0) continue;  // not squarefree mod p
    auto factors = fp_factor_squarefree(fp, p);
    if (factors.size() == 1) return {f};  // irreducible already
    if (best_p == 0 || factors.size() < best_factors.size()) {
      best_p = p;
      best_factors = std::move(factors);
    }
    ++tried;
    if (tried >= 5 || best_factors.size() <= 2) break;
  }
  if (best_p == 0) raise(ErrorKind::Internal, "no admissible prime found (degree too large?)");

  // Coefficient bound for monic factors (Mignotte-style): 2^n * |f|_2.
  Integer norm2_sq(0);
  for (const auto& c : f) norm2_sq += c * c;
  Integer bound;
  mpz_sqrt(bound.get_mpz_t(), norm2_sq.get_mpz_t());
  bound += 1;
  bound <<= n;
  Integer target(static_cast<unsigned long>(best_p));
  while (target < 2 * bound + 1) target *= target;

  MPoly fm(f.begin(), f.end());
  mp_reduce(fm, target);
  std::vector<MPoly> lifted;
  hensel_lift_tree(fm, best_factors, 0, best_factors.size(), best_p, target, lifted);

  // Subset recombination.
  std::vector<MPoly> pool = lifted;
  ZPoly remaining = f;
  std::vector<ZPoly> out;
  bool progress = true;
  while (progress) {
    progress = false;
    int r = static_cast<int>(pool.size());
    if (r == 0) break;
    for (int s = 1; 2 * s <= r && !progress; ++s) {
      std::vector<int> idx(s);
      for (int i = 0; i < s; ++i) idx[i] = i;
      for (;;) {
        // Candidate from subset idx.
        MPoly prod{Integer(1)};
        for (int i : idx) prod = mp_mul(prod, pool[i], target);
        ZPoly cand(prod.size());
        for (size_t i = 0; i < prod.size(); ++i) cand[i] = symmetric_mod(prod[i], target);
        zp_trim(cand);
        ZPoly quotient;
        if (!cand.empty() && cand.back() == 1 && z_divide_monic(remaining, cand, quotient)) {
          out.push_back(cand);
          remaining = quotient;
          std::vector<MPoly> next_pool;
          for (int i = 0, j = 0; i < r; ++i) {
            if (j < s && idx[j] == i) {
              ++j;
              continue;
            }
            next_pool.push_back(pool[i]);
          }
          pool = std::move(next_pool);
          progress = true;
          break;
        }
        // Next combination in lex order.
        int pos = s - 1;
        while (pos >= 0 && idx[pos] == r - s + pos) --pos;
        if (pos < 0) break;
        ++idx[pos];
        for (int i = pos + 1; i < s; ++i) idx[i] = idx[i - 1] + 1;
      }
    }
  }
  if (zp_deg(remaining) >= 1) out.push_back(remaining);

  // Verify the factorization multiplies back exactly.
  ZPoly check{Integer(1)};
  for (const auto& g : out) check = z_mul(check, g);
  if (check != f) raise(ErrorKind::Internal, "recombination check failed");
  std::sort(out.begin(), out.end(), [](const ZPoly& a, const ZPoly& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    for (size_t i = a.size(); i-- > 0;)
      if (a[i] != b[i]) return a[i] < b[i];
    return false;
  });
  return out;
}

}  // namespace ambra
