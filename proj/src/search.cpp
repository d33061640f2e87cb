#include "psr/search.hpp"

#include <algorithm>
#include <unordered_map>

#include "psr/separate.hpp"

namespace psr {

void Budget::validate() const {
  if (max_nodes == 0 || max_degree == 0 || max_coef == 0 || max_states == 0)
    throw BudgetError("budget limits must be positive");
}

const char* verdict_name(Verdict::Kind k) {
  switch (k) {
    case Verdict::Kind::Holds: return "Holds";
    case Verdict::Kind::Refuted: return "Refuted";
    case Verdict::Kind::Unknown: return "Unknown";
  }
  return "?";
}

namespace {

struct MonoHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

// One rewrite: replace c*m*from by c*m*to, where (from, to) is a relation
// read forwards (lhs -> rhs) or backwards (rhs -> lhs). `grow` marks the
// backward use of a relation l <= 0, which adds m*l.
struct Move {
  std::size_t rel = 0;
  Monomial m;
  Coef c = 1;
  bool grow = false;
};

struct Successor {
  Expr state;
  Move move;
};

struct Node {
  Expr state;
  std::size_t parent = 0;
  Move move;
  bool root = false;
};

class Search {
 public:
  Search(const Presentation& p, const Expr& x, const Expr& y, const Budget& b)
      : p_(p), x_(x), y_(y), b_(b) {
    max_deg_ = std::max({b.max_degree, x.degree(), y.degree()});
    max_coef_ = std::max({b.max_coef, x.max_coef(), y.max_coef()});
  }

  std::optional<Certificate> run() {
    add_fwd(x_, 0, {}, true);
    add_bwd(y_, 0, {}, true);
    if (meet_) return assemble();
    std::vector<std::size_t> ff{0}, bf{0};
    std::uint64_t fd = 0, bd = 0;
    while (fd + bd < b_.max_nodes && (!ff.empty() || !bf.empty())) {
      bool forward = !ff.empty() && (bf.empty() || ff.size() <= bf.size());
      auto& frontier = forward ? ff : bf;
      auto& nodes = forward ? fwd_ : bwd_;
      auto succ = kernels::expand<Successor>(b_.mode, frontier.size(), [&](std::size_t i) {
        const Expr& s = nodes[frontier[i]].state;
        return forward ? forward_moves(s) : backward_moves(s);
      });
      std::vector<std::size_t> next;
      for (std::size_t i = 0; i < frontier.size() && !meet_; ++i) {
        for (auto& sc : succ[i]) {
          bool added = forward ? add_fwd(std::move(sc.state), frontier[i], sc.move, false)
                               : add_bwd(std::move(sc.state), frontier[i], sc.move, false);
          if (added) next.push_back((forward ? fwd_.size() : bwd_.size()) - 1);
          if (meet_) break;
          if (fwd_.size() + bwd_.size() > b_.max_states) return std::nullopt;
        }
      }
      if (meet_) return assemble();
      frontier = std::move(next);
      (forward ? fd : bd) += 1;
    }
    return std::nullopt;
  }

 private:
  bool within(const Expr& e) const { return e.degree() <= max_deg_ && e.max_coef() <= max_coef_; }

  // Monomials m with from*m sharing a term with s, in ascending order.
  static std::vector<Monomial> multipliers(const Expr& s, const Expr& from) {
    std::vector<Monomial> ms;
    for (const auto& t : s.terms())
      for (const auto& f : from.terms())
        if (f.mono.divides(t.mono)) ms.push_back(f.mono.quotient_of(t.mono));
    std::sort(ms.begin(), ms.end());
    ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
    return ms;
  }

  void rewrites(const Expr& s, std::size_t rel, const Expr& from, const Expr& to,
                std::vector<Successor>& out) const {
    for (const auto& m : multipliers(s, from)) {
      try {
        Expr pat = from.times(m);
        Coef cmax = ~Coef(0);
        for (const auto& t : pat.terms()) cmax = std::min(cmax, s.coef_of(t.mono) / t.coef);
        if (cmax == 0) continue;
        std::vector<Coef> cs{1};
        if (cmax > 1) cs.push_back(cmax);
        for (Coef c : cs) {
          Expr next = s.minus(pat.scaled(c)) + to.times(m, c);
          if (within(next)) out.push_back({std::move(next), {rel, m, c, false}});
        }
      } catch (const OverflowError&) {
      }
    }
  }

  std::vector<Successor> forward_moves(const Expr& s) const {
    std::vector<Successor> out;
    for (std::size_t i = 0; i < p_.relations.size(); ++i) {
      const auto& r = p_.relations[i];
      if (!r.lhs.is_zero()) rewrites(s, i, r.lhs, r.rhs, out);
    }
    return out;
  }

  std::vector<Successor> backward_moves(const Expr& s) const {
    std::vector<Successor> out;
    for (std::size_t i = 0; i < p_.relations.size(); ++i) {
      const auto& r = p_.relations[i];
      if (!r.rhs.is_zero()) {
        rewrites(s, i, r.rhs, r.lhs, out);
      } else if (!r.lhs.is_zero() && r.lhs.degree() <= max_deg_) {
        MonomialSet all;
        for (const auto& me : all.enumerate(p_.arity(), max_deg_ - r.lhs.degree())) {
          try {
            const Monomial& m = me.terms()[0].mono;
            Expr next = s + r.lhs.times(m);
            if (within(next)) out.push_back({std::move(next), {i, m, 1, true}});
          } catch (const OverflowError&) {
          }
        }
      }
    }
    return out;
  }

  bool add_fwd(Expr s, std::size_t parent, Move mv, bool root) {
    if (fwd_ids_.count(s)) return false;
    std::size_t id = fwd_.size();
    fwd_ids_.emplace(s, id);
    fwd_.push_back({s, parent, std::move(mv), root});
    const Expr& st = fwd_.back().state;
    if (st.is_zero()) {
      zero_fwd_ = id;
      if (!meet_ && !bwd_.empty()) meet_ = {id, 0};
      return true;
    }
    fwd_by_lead_[st.terms().back().mono].push_back(id);
    // Look up backward states containing every monomial of st, using the
    // shortest posting list.
    const std::vector<std::size_t>* best = nullptr;
    for (const auto& t : st.terms()) {
      auto it = bwd_by_mono_.find(t.mono);
      if (it == bwd_by_mono_.end()) return true;
      if (!best || it->second.size() < best->size()) best = &it->second;
    }
    for (std::size_t b : *best) {
      if (st.dominated_by(bwd_[b].state)) {
        meet_ = {id, b};
        break;
      }
    }
    return true;
  }

  bool add_bwd(Expr s, std::size_t parent, Move mv, bool root) {
    if (bwd_ids_.count(s)) return false;
    std::size_t id = bwd_.size();
    bwd_ids_.emplace(s, id);
    bwd_.push_back({s, parent, std::move(mv), root});
    const Expr& st = bwd_.back().state;
    for (const auto& t : st.terms()) bwd_by_mono_[t.mono].push_back(id);
    if (zero_fwd_) {
      if (!meet_) meet_ = {*zero_fwd_, id};
      return true;
    }
    std::optional<std::size_t> hit;
    for (const auto& t : st.terms()) {
      auto it = fwd_by_lead_.find(t.mono);
      if (it == fwd_by_lead_.end()) continue;
      for (std::size_t f : it->second) {
        if ((!hit || f < *hit) && fwd_[f].state.dominated_by(st)) {
          hit = f;
          break;
        }
      }
    }
    if (hit) meet_ = {*hit, id};
    return true;
  }

  Certificate step(const Expr& before_side, const Move& mv, bool forward) const {
    const auto& r = p_.relations[mv.rel];
    Expr mc = Expr::monomial(mv.m, mv.c);
    if (mv.grow) return Certificate::add(Certificate::mul(Certificate::base(p_, mv.rel), mc), before_side);
    // forward: before_side is the source, which contains c*m*lhs;
    // backward: before_side is the target, which contains c*m*rhs.
    const Expr& used = forward ? r.lhs : r.rhs;
    Expr q = before_side.minus(used.times(mv.m, mv.c));
    return Certificate::add(Certificate::mul(Certificate::base(p_, mv.rel), mc), q);
  }

  Certificate assemble() const {
    auto [fi, bi] = *meet_;
    std::vector<Certificate> fsteps;
    for (std::size_t i = fi; !fwd_[i].root; i = fwd_[i].parent)
      fsteps.push_back(step(fwd_[fwd_[i].parent].state, fwd_[i].move, true));
    std::reverse(fsteps.begin(), fsteps.end());
    const Expr& f = fwd_[fi].state;
    const Expr& b = bwd_[bi].state;
    std::vector<Certificate> all = fsteps;
    all.push_back(Certificate::weaken(f, b.minus(f)));
    for (std::size_t i = bi; !bwd_[i].root; i = bwd_[i].parent)
      all.push_back(step(bwd_[bwd_[i].parent].state, bwd_[i].move, false));
    if (all.empty()) return Certificate::refl(x_);
    return Certificate::chain(all);
  }

  const Presentation& p_;
  Expr x_, y_;
  Budget b_;
  std::uint64_t max_deg_ = 0;
  Coef max_coef_ = 0;
  std::vector<Node> fwd_, bwd_;
  std::unordered_map<Expr, std::size_t, ExprHash> fwd_ids_, bwd_ids_;
  std::unordered_map<Monomial, std::vector<std::size_t>, MonoHash> fwd_by_lead_, bwd_by_mono_;
  std::optional<std::size_t> zero_fwd_;
  std::optional<std::pair<std::size_t, std::size_t>> meet_;
};

}  // namespace

std::optional<Certificate> prove(const Presentation& p, const Expr& x, const Expr& y, const Budget& b) {
  b.validate();
  if (x == y) return Certificate::refl(x);
  if (x.is_constant() && y.is_constant() && x.dominated_by(y)) {
    Coef n = x.is_zero() ? 0 : x.constant_value();
    return Certificate::nat(n, y.constant_value());
  }
  if (x.dominated_by(y)) return Certificate::weaken(x, y.minus(x));
  return Search(p, x, y, b).run();
}

std::optional<Hom> refute(const Presentation& p, const Expr& x, const Expr& y) {
  if (p.family) {
    if (auto s = separate(p, *p.family, x, y)) return s->hom;
  }
  for (auto& f : default_valuations(p))
    if (eval(f, x) > eval(f, y)) return f;
  return std::nullopt;
}

Verdict check_preorder(const Presentation& p, const Expr& x, const Expr& y, const Budget& b) {
  if (auto c = prove(p, x, y, b)) return Verdict::holds(*c);
  if (auto f = refute(p, x, y)) return Verdict::refuted(*f);
  return Verdict::unknown();
}

Verdict nat_compare(Coef n, Coef m) {
  if (n <= m) return Verdict::holds(Certificate::nat(n, m));
  // The identity valuation of the generator-free semiring separates.
  return Verdict::refuted(Hom{});
}

std::optional<Certificate> find_degeneracy(const Presentation& p, Coef max_n, const Budget& b) {
  for (Coef n = 1; n <= max_n; ++n)
    for (Coef m = 0; m < n; ++m)
      if (auto c = prove(p, Expr::constant(n), Expr::constant(m), b)) return c;
  return std::nullopt;
}

}  // namespace psr
