#pragma once

// S+, S-, S_b membership, extensions of spectral points from slices,
// the M1/M2 condition reports and the duality orchestrator.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "psr/asymptotic.hpp"
#include "psr/localization.hpp"
#include "psr/order_extension.hpp"
#include "psr/separate.hpp"

namespace psr {

// ---------------------------------------------------------------- membership

enum class MemberKind { Plus, Minus, Bounded };
const char* member_name(MemberKind k);

/// Plus: 1 <= n*s. Minus: s <= n. Bounded: both with the same n.
/// zero marks 0 in S+, which holds by definition and carries no certificate.
struct MembershipCertificate {
  MemberKind kind = MemberKind::Plus;
  Expr s;
  Coef n = 0;
  bool zero = false;
  Certificate plus;
  Certificate minus;
};

/// Searches n = 1..bound. Throws std::invalid_argument for bound 0.
std::optional<MembershipCertificate> membership(const Presentation& p, const Expr& s, MemberKind kind,
                                                Coef bound, const Budget& b);

/// Throws ReplayError if a certificate is missing, fails to replay, or
/// concludes something else.
void replay_membership(const Presentation& p, const MembershipCertificate& mc);

// ---------------------------------------------------------------- slices

/// A spectral point of a subsemiring, given on its generators.
using SliceHom = RfSpec;

class ExtensionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// f(1 + x) - 1 with f on the S_b slice; nullopt if 1 + x is outside it.
std::optional<Rational> shifted_value(const SliceHom& fb, const Expr& x);

/// The S- slice point t -> f(1 + t) - 1 on `minus_subgens`. Throws
/// ExtensionError if some 1 + t is outside the S_b slice or f(1 + t) < 1.
SliceHom extend_b_to_minus(const SliceHom& fb, const std::vector<Expr>& minus_subgens);

/// f(ubar)^{-k} f(ubar^k x); nullopt if ubar^k x is outside the slice or
/// f(ubar) = 0.
std::optional<Rational> value_with_k(const SliceHom& fm, const Expr& ubar, const Expr& x, std::uint64_t k);

struct FullExtension {
  enum class Kind { Extended, NoExtension };
  Kind kind = Kind::NoExtension;
  Hom hom;
  std::vector<std::uint64_t> ks;  // least k used per generator
};

/// Extends a point of the S- slice to S through ubar. NoExtension iff
/// f(ubar) = 0. Throws ExtensionError if ubar is outside the slice, if some
/// generator needs k > max_k, or if the result fails verify_hom.
FullExtension extend_minus_to_full(const Presentation& p, const SliceHom& fm, const Expr& ubar,
                                   std::uint64_t max_k = 8);

/// Pullback along the inclusion of the subsemiring generated by `subgens`.
SliceHom restrict_to(const Hom& f, const std::vector<Expr>& subgens);

/// f(s) / f(t); throws std::domain_error if f(t) = 0.
Rational eval_fraction(const Hom& f, const Fraction& q);

// ---------------------------------------------------------------- families

struct FamilyPoint {
  std::vector<Rational> point;
  Hom hom;
};

/// Feasible grid points of the box truncated at `floor` whose valuations
/// pass verify_hom, in grid order.
std::vector<FamilyPoint> family_points(const Presentation& p, const HomFamily& fam, std::size_t grid,
                                       const Rational& floor);

struct BoundReport {
  enum class Kind { Bounded, Unbounded, Inconclusive };
  Kind kind = Kind::Inconclusive;
  std::vector<Rational> floors;
  std::vector<Rational> sups;                     // candidate sup per floor
  std::vector<std::vector<Rational>> argmax;      // parameter point per floor
};

const char* bound_name(BoundReport::Kind k);

struct BoundOptions {
  std::size_t grid = 9;
  std::size_t floors = 4;  // floor, floor/2, floor/4, ...
  kernels::Mode mode = kernels::Mode::Parallel;
};

/// Candidate sup of f(num)/f(den) over the family at shrinking floors.
/// Candidates are grid points plus, per grid point and coordinate, the roots
/// of constraints that are affine in that coordinate. Equal sups at every
/// floor mean Bounded; strictly increasing sups mean Unbounded.
BoundReport family_sup(const Presentation& p, const HomFamily& fam, const Expr& num, const Expr& den,
                       const BoundOptions& opt = {});

// ---------------------------------------------------------------- M1 / M2

struct CondOptions {
  Budget budget;
  std::uint64_t sample_degree = 4;  // monomial samples s
  std::uint64_t m_degree = 4;       // enumerated members of M
  Coef max_n = 16;
  std::uint32_t t_total = 2;        // T-products t1, t2 by total exponent
  BoundOptions bound;
};

/// t2 <= n*m*t1*s and m*t1*s <= n*t2 (t1 = t2 = 1 for plain M1).
struct M1Entry {
  Expr s;
  bool found = false;
  Expr m, t1, t2;
  Coef n = 0;
  Certificate lower;
  Certificate upper;
};

/// Boundedness of ev_m * ev_t1 / ev_t2 and, when bounded, m*t1 <= n*t2.
struct M2Entry {
  Expr m, t1, t2;
  BoundReport bound;
  Coef n = 0;
  std::optional<Certificate> cert;
};

/// Nonzero monomials of total degree <= d in graded order.
std::vector<Expr> monomial_samples(std::size_t arity, std::uint64_t d);

/// Throws std::invalid_argument if the presentation has no family.
std::vector<M1Entry> check_M1(const Presentation& p, const std::vector<Expr>& samples, const CondOptions& opt = {});
std::vector<M2Entry> check_M2(const Presentation& p, const CondOptions& opt = {});
std::vector<M1Entry> check_M1prime(const Presentation& p, const std::vector<Expr>& tgens,
                                   const std::vector<Expr>& samples, const CondOptions& opt = {});
std::vector<M2Entry> check_M2prime(const Presentation& p, const std::vector<Expr>& tgens,
                                   const CondOptions& opt = {});

/// Deterministic report text. t1 and t2 are printed only when one of them
/// differs from 1, so T = {1} prints the same as the plain conditions.
std::string print_m1(const Presentation& p, const std::vector<M1Entry>& entries);
std::string print_m2(const Presentation& p, const std::vector<M2Entry>& entries);

// ---------------------------------------------------------------- duality

class SoundnessError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct DualOptions {
  AsymOptions asym;
  SeparateOptions sep;
  Coef sanity_n = 3;  // find_degeneracy bound; 0 skips the check
};

struct DualResult {
  enum class Kind { AsymptoticallyGE, Separated, Inconclusive };
  Kind kind = Kind::Inconclusive;
  std::optional<AsymptoticWitness> witness;
  std::optional<Separation> separation;
  std::string report;  // Inconclusive
};

const char* dual_name(DualResult::Kind k);

/// Decides upper >~ lower. Runs the separation search and the asymptotic
/// search (without its own refutation step) in parallel sections. Throws
/// SoundnessError if both succeed or if the presentation is degenerate;
/// std::invalid_argument without a power universal element.
DualResult dual_compare(const Presentation& p, const HomFamily& fam, const Expr& lower, const Expr& upper,
                        const DualOptions& opt = {});

}  // namespace psr
