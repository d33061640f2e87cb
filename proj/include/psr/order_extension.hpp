#pragma once

// The preorder <=_R obtained by forcing a relation set R, and <=_f for a
// spectral point f of a subsemiring.

#include <optional>
#include <string>
#include <vector>

#include "psr/search.hpp"

namespace psr {

/// S0 = the subsemiring generated by `subgens`, f given by its values on
/// them. Elements of S0 are polynomials in the sub-generators.
struct RfSpec {
  std::vector<Expr> subgens;
  std::vector<Rational> values;
};

/// Coefficients of e as a polynomial in the sub-generators, found by leading
/// monomial reduction. nullopt if e is not in the generated subsemiring.
std::optional<std::vector<std::pair<std::vector<std::uint32_t>, Coef>>> decompose(
    const Expr& e, const std::vector<Expr>& subgens);

/// f evaluated through a decomposition; nullopt outside S0.
std::optional<Rational> eval_sub(const RfSpec& f, const Expr& e);

/// A relation set R given by a finite list of pairs (x, y), meaning x <=_R y,
/// or by R_f.
struct ExtRelations {
  std::vector<Relation> pairs;
  std::optional<RfSpec> rf;

  bool contains(const Expr& x, const Expr& y) const;
};

struct ExtTriple {
  Expr s, x, y;
  bool operator==(const ExtTriple&) const = default;
};

/// a <=_R b via a + sum s_i y_i <= b + sum s_i x_i.
struct ExtCertificate {
  Expr a, b;
  std::vector<ExtTriple> triples;
  Certificate inner;
};

class ExtError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Checks R-membership of every triple and replays the inner certificate.
/// Returns (a, b); throws ExtError or ReplayError.
std::pair<Expr, Expr> replay_ext(const Presentation& p, const ExtRelations& R, const ExtCertificate& ec);

/// n = 0 wrapper of an ordinary certificate.
ExtCertificate ext_from(const Certificate& c);
/// x <=_R y for (x, y) in R, via x + y <= y + x.
ExtCertificate ext_canonical(const Expr& x, const Expr& y);
ExtCertificate ext_add(const ExtCertificate& ec, const Expr& c);
ExtCertificate ext_mul(const ExtCertificate& ec, const Expr& c);
ExtCertificate ext_trans(const ExtCertificate& first, const ExtCertificate& second);

struct ExtVerdict {
  Verdict::Kind kind = Verdict::Kind::Unknown;
  std::optional<ExtCertificate> cert;
};

struct ExtOptions {
  Budget budget;
  std::uint64_t multiplier_degree = 1;  // degree of enumerated s
  std::uint64_t pair_degree = 1;        // degree of enumerated R_f pairs
};

/// Throws ExtError if an R_f spec fails monotonicity on the base relations it
/// can evaluate.
ExtVerdict check_ext(const Presentation& p, const ExtRelations& R, const Expr& a, const Expr& b,
                     const ExtOptions& opt = {});

/// Certificate for (<=_{R1})_{R2}: outer triples from R2 and an inner
/// <=_{R1} certificate of a + sum s y <= b + sum s x.
struct NestedExtCertificate {
  Expr a, b;
  std::vector<ExtTriple> outer;
  ExtCertificate inner;
};

std::pair<Expr, Expr> replay_nested(const Presentation& p, const ExtRelations& R1, const ExtRelations& R2,
                                    const NestedExtCertificate& nc);
/// Nested to a single certificate over R1 u R2.
ExtCertificate flatten_nested(const NestedExtCertificate& nc);
/// Single certificate over R1 u R2 to nested; triples in R1 stay inner.
NestedExtCertificate split_union(const ExtCertificate& ec, const ExtRelations& R1);

ExtRelations union_of(const ExtRelations& R1, const ExtRelations& R2);

struct UnionReportEntry {
  Expr a, b;
  Verdict::Kind union_kind = Verdict::Kind::Unknown;
  Verdict::Kind nested_kind = Verdict::Kind::Unknown;
  bool converted = false;  // both directions replayed
};

/// For each goal: search under R1 u R2, convert to nested and back, and
/// replay every form.
std::vector<UnionReportEntry> union_factorization_check(const Presentation& p, const ExtRelations& R1,
                                                        const ExtRelations& R2,
                                                        const std::vector<Relation>& goals,
                                                        const ExtOptions& opt = {});

/// For R = {(x, y)} and base: a + s*y <=_R b + s*x, the certificate at level
/// n of a*A_n + s*y^{n+1} <=_R b*A_n + s*x^{n+1}, A_n = sum_m x^m y^{n-m}.
ExtCertificate telescoping_schema(const Expr& x, const Expr& y, const Expr& a, const Expr& b, const Expr& s,
                                  const ExtCertificate& base, std::uint64_t n);

}  // namespace psr
