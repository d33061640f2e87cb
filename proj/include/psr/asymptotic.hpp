#pragma once

// Asymptotic witnesses u^{k_n} x^n >= y^n with eventually constant envelopes,
// represented by rule programs ("schemas") that expand to a certificate for
// each n.

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "psr/search.hpp"

namespace psr {

class WitnessError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// (a*n + b*m + c*n*m + e) / d, required to be a nonnegative integer at every
/// context it is evaluated in.
struct Index {
  std::int64_t a = 0, b = 0, c = 0, e = 0, d = 1;

  static Index constant(std::int64_t k) { return {0, 0, 0, k, 1}; }
  static Index n() { return {1, 0, 0, 0, 1}; }
  static Index m() { return {0, 1, 0, 0, 1}; }
  static Index nm() { return {0, 0, 1, 0, 1}; }
  /// (n - r) / p
  static Index quotient(std::int64_t r, std::int64_t p) { return {1, 0, 0, -r, p}; }

  std::uint64_t at(std::uint64_t n, std::uint64_t m) const;
  bool operator==(const Index&) const = default;
};

/// Product of base^index factors.
struct IExpr {
  struct Factor {
    Expr base;
    Index exp;
    bool operator==(const Factor&) const = default;
  };
  std::vector<Factor> factors;

  static IExpr of(const Expr& e) { return {{{e, Index::constant(1)}}}; }
  static IExpr power(const Expr& e, Index k) { return {{{e, k}}}; }
  IExpr operator*(const IExpr& o) const;
  Expr at(std::uint64_t n, std::uint64_t m) const;
  bool operator==(const IExpr&) const = default;
};

struct SchemaNode;
using Schema = std::shared_ptr<const SchemaNode>;
struct AsymptoticWitness;

struct SchemaNode {
  enum class Kind {
    Cert,         // fixed certificate
    Refl,         // operand <= operand
    Pow,          // cert a <= b gives a^k <= b^k by a chain of k steps
    Mul,          // child times operand
    Add,          // child plus operand
    Trans,        // left-to-right chain of children
    Table,        // certs[n]; undefined beyond the table
    Reindex,      // child at (idx(n,m), idx2(n,m))
    Binomial,     // (y+z)^n <= u^K (x+z)^n from an inner witness
    CancelChain,  // y^n <= u^{2k} x^n from s*y <= s*x
  };
  Kind kind = Kind::Refl;
  Certificate cert;  // Cert, Pow, CancelChain: s*Y <= s*X at the context
  Index idx;         // Pow, Reindex (n), CancelChain (length)
  Index idx2;        // Reindex (m)
  IExpr operand;     // Refl, Mul, Add
  std::vector<Schema> children;
  std::vector<Certificate> table;

  // Binomial
  std::shared_ptr<const AsymptoticWitness> inner;
  Expr z;
  // Binomial and CancelChain
  Certificate one_le_u;  // Binomial: 1 <= u; CancelChain: 1 <= u^k s
  Certificate dom;       // CancelChain: s <= u^k
  std::uint64_t K = 0;   // Binomial: padded envelope; CancelChain: k
  Expr u, s;
  IExpr X, Y;            // CancelChain bases
};

Schema schema_cert(Certificate c);
Schema schema_refl(IExpr e);
Schema schema_pow(Certificate c, Index k);
Schema schema_mul(Schema child, IExpr e);
Schema schema_add(Schema child, IExpr e);
Schema schema_trans(std::vector<Schema> children);
Schema schema_table(std::vector<Certificate> certs);
Schema schema_reindex(Schema child, Index n, Index m);

/// Certificate produced by the schema at context (n, m). Throws WitnessError
/// for undefined contexts.
Certificate instantiate(const Schema& s, std::uint64_t n, std::uint64_t m = 0);

struct EnvelopeEntry {
  std::uint64_t residue = 0;
  std::uint64_t modulus = 1;
  std::uint64_t K = 0;
  Schema schema;  // at n = residue (mod modulus): y^n <= u^K x^n
};

struct HorizonEntry {
  std::uint64_t n = 0;
  std::uint64_t k = 0;
  Certificate cert;
};

/// Witness for x >~ y with respect to u.
struct AsymptoticWitness {
  enum class Kind { ConstantK, Periodic, Horizon };
  Kind kind = Kind::ConstantK;
  Expr u, x, y;
  std::vector<EnvelopeEntry> entries;  // one per residue of a common modulus
  std::vector<HorizonEntry> horizon;   // Horizon only; evidence, no claim

  std::uint64_t modulus() const;
  const EnvelopeEntry& entry_for(std::uint64_t n) const;
  std::uint64_t k_at(std::uint64_t n) const;
  std::uint64_t max_K() const;
  bool claims_asymptotic() const { return kind != Kind::Horizon; }
  /// Certificate of y^n <= u^{k_n} x^n.
  Certificate instantiate(std::uint64_t n) const;
};

const char* kind_name(AsymptoticWitness::Kind k);

/// Replays the instance for every n <= horizon and checks its conclusion.
/// Throws WitnessError or ReplayError.
void verify_witness(const Presentation& p, const AsymptoticWitness& w, std::uint64_t horizon = 12);

struct PowerUniversalEntry {
  Expr x;
  std::uint64_t k = 0;
  Certificate dom;  // x <= u^k
  Certificate inv;  // 1 <= u^k x
};

struct PowerUniversalWitness {
  Expr u;
  Certificate one_le_u;
  std::vector<PowerUniversalEntry> entries;
  const PowerUniversalEntry* find(const Expr& x) const;
};

/// Covers exactly the listed (nonzero) elements with the least k <= max_k.
/// Throws std::invalid_argument for u = 0.
std::optional<PowerUniversalWitness> check_power_universal(const Presentation& p, const Expr& u,
                                                           const std::vector<Expr>& coverage,
                                                           const Budget& b, std::uint64_t max_k = 8);

/// ConstantK(0) from a certificate of y <= x.
AsymptoticWitness lift(const Expr& u, const Certificate& y_le_x);

/// Envelope multiplied by k using u2 <= u1^k.
AsymptoticWitness convert_power_universal(const AsymptoticWitness& w, const Expr& u1, std::uint64_t k,
                                          const Certificate& u2_le_u1k);

/// w1: x >~ y, w2: y >~ z gives x >~ z.
AsymptoticWitness compose_asymptotic(const AsymptoticWitness& w1, const AsymptoticWitness& w2);

/// (x+z) >~ (y+z) with the constant envelope max_r K_r.
AsymptoticWitness add_congruence(const AsymptoticWitness& w, const Expr& z, const Certificate& one_le_u);

/// xz >~ yz with the same envelope.
AsymptoticWitness mul_congruence(const AsymptoticWitness& w, const Expr& z);

/// From s*y <= s*x and a power-universal entry for s: x >~ y, ConstantK(2k).
AsymptoticWitness cancel_factor(const Presentation& p, const Expr& s, const Expr& x, const Expr& y,
                                const Certificate& sy_le_sx, const PowerUniversalEntry& pu_s,
                                const Expr& u);

/// From t*y^n <= s*x^n for every n (schema), pu entries for t (1 <= u^k t)
/// and s (s <= u^l): x >~ y with ConstantK(k + l). The schema is checked up
/// to `horizon`.
AsymptoticWitness small_factors(const Presentation& p, const Expr& s, const Expr& t, const Expr& x,
                                const Expr& y, const Schema& family, const PowerUniversalEntry& pu_s,
                                const PowerUniversalEntry& pu_t, const Expr& u, std::uint64_t horizon = 12);

/// Witness of u^{k_n} x^n >~ y^n for every n: per residue of n, the outer
/// constant K and an inner schema that at (n, m) gives
/// y^{nm} <= u^L (u^K x^n)^m.
struct DoubledEntry {
  std::uint64_t residue = 0;
  std::uint64_t modulus = 1;
  std::uint64_t K = 0;
  std::uint64_t L = 0;
  Schema inner;
};

struct DoubledWitness {
  Expr u, x, y;
  std::vector<DoubledEntry> entries;
  bool horizon_only = false;
};

/// Replays the inner schema at every (n, m) with 1 <= n*m <= limit.
void verify_doubled(const Presentation& p, const DoubledWitness& w, std::uint64_t limit);

/// x >~ y from a doubled witness. Throws WitnessError for horizon-only input.
AsymptoticWitness flatten(const DoubledWitness& w);

struct AsymOptions {
  Budget budget;
  std::uint64_t horizon = 12;      // verification horizon
  std::uint64_t max_period = 4;    // periodic power trick moduli 2..max_period
  std::uint64_t max_k = 4;         // envelope constants tried per residue
  std::uint64_t evidence_n = 4;    // Horizon evidence collected for n <= evidence_n
  bool refute = true;              // try a separating spectral point
};

struct AsymResult {
  enum class Kind { Witness, Refuted, Unknown };
  Kind kind = Kind::Unknown;
  std::optional<AsymptoticWitness> witness;  // Witness, or Horizon evidence on Unknown
  std::optional<Hom> hom;                    // Refuted: f(y) > f(x)
};

/// Decides x >~ y (equivalently y <~ x) with respect to u.
AsymResult check_asymptotic(const Presentation& p, const Expr& u, const Expr& x, const Expr& y,
                            const AsymOptions& opt = {});

}  // namespace psr
