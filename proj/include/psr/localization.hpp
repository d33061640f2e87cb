#pragma once

// Localization T^{-1}S at a finitely generated multiplicative set T.

#include <optional>
#include <vector>

#include "psr/asymptotic.hpp"

namespace psr {

/// Exponent of each generator of T in a product.
struct TWitness {
  std::vector<std::uint32_t> exps;
  bool operator==(const TWitness&) const = default;
};

struct Fraction {
  Expr num;
  Expr den;
  TWitness den_w;
};

/// r * s1 * t2 <= r * s2 * t1 for a <= b (inner certificate), or the exact
/// equality r * s1 * t2 == r * s2 * t1 for equality (no inner certificate).
struct LocCertificate {
  Expr r;
  TWitness r_w;
  Certificate inner;
};

class LocError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Localization {
 public:
  /// T is generated by `tgens` (1 is always in T). Throws LocError for a zero
  /// generator.
  Localization(const Presentation& p, std::vector<Expr> tgens);

  const Presentation& presentation() const { return p_; }
  const std::vector<Expr>& tgens() const { return t_; }

  Expr product(const TWitness& w) const;
  /// Finds exponents with product == e, by total exponent up to max_total.
  std::optional<TWitness> membership(const Expr& e, std::uint32_t max_total = 16) const;
  /// Members of T by total exponent <= max_total, in enumeration order.
  std::vector<std::pair<Expr, TWitness>> enumerate(std::uint32_t max_total) const;

  /// Throws LocError if den is not a T-product.
  Fraction make(const Expr& num, const Expr& den) const;
  Fraction canonical(const Expr& s) const { return make(s, Expr::one()); }
  Fraction add(const Fraction& a, const Fraction& b) const;
  Fraction mul(const Fraction& a, const Fraction& b) const;

  /// Checks T-membership of r and of the denominators, then the inner
  /// certificate (or equality). Throws LocError or ReplayError.
  void replay_le(const Fraction& a, const Fraction& b, const LocCertificate& c) const;
  void replay_eq(const Fraction& a, const Fraction& b, const LocCertificate& c) const;

  struct EqResult {
    enum class Kind { Equal, NotEqual, Unknown };
    Kind kind = Kind::Unknown;
    std::optional<LocCertificate> cert;
    std::optional<Hom> hom;  // NotEqual: positive on T, f(a) != f(b)
  };
  EqResult frac_eq(const Fraction& a, const Fraction& b, std::uint32_t max_r = 4) const;

  struct LeResult {
    Verdict::Kind kind = Verdict::Kind::Unknown;
    std::optional<LocCertificate> cert;
    std::optional<Hom> hom;  // Refuted: f(a) > f(b)
  };
  LeResult frac_le(const Fraction& a, const Fraction& b, const Budget& budget, std::uint32_t max_r = 2) const;

  /// Certificate of a <= b converted to representatives a' = a, b' = b
  /// (equal as fractions, with equality certificates qa, qb).
  LocCertificate swap_representatives(const Fraction& a, const Fraction& a2, const LocCertificate& qa,
                                      const Fraction& b, const Fraction& b2, const LocCertificate& qb,
                                      const LocCertificate& c) const;

  /// Transitivity: a <= b with r1, b <= c with r2.
  LocCertificate trans(const Fraction& a, const Fraction& b, const Fraction& c, const LocCertificate& ab,
                       const LocCertificate& bc) const;

  /// s/t <= u^K/1 and 1/1 <= u^K s/t with K = k_s + k_t, from
  /// power-universal entries for s and t.
  struct PowerUniversality {
    std::uint64_t K = 0;
    LocCertificate dom;
    LocCertificate inv;
  };
  PowerUniversality power_universality(const Fraction& f, const PowerUniversalEntry& ps,
                                       const PowerUniversalEntry& pt, const Expr& u) const;

 private:
  const Presentation& p_;
  std::vector<Expr> t_;
};

/// Localized witness for x/1 >~ y/1: per residue, r in T and a schema whose
/// instance at n concludes r*y^n <= r*u^K*x^n.
struct LocEntry {
  std::uint64_t residue = 0;
  std::uint64_t modulus = 1;
  std::uint64_t K = 0;
  Expr r;
  TWitness r_w;
  Schema schema;
};

struct LocAsymptoticWitness {
  Expr u, x, y;
  std::vector<LocEntry> entries;
  bool horizon_only = false;
};

void verify_loc_witness(const Localization& L, const LocAsymptoticWitness& w, std::uint64_t horizon = 12);

/// r = 1 lift of an ordinary witness.
LocAsymptoticWitness lift_asymptotic(const AsymptoticWitness& w);

/// Cancels r per residue and flattens; needs power-universal entries for
/// every r. Throws WitnessError for horizon-only input or missing coverage.
AsymptoticWitness lower_asymptotic(const Localization& L, const LocAsymptoticWitness& w,
                                   const PowerUniversalWitness& pu);

}  // namespace psr
