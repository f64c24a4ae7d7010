#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "msf/algebra/algebra.hpp"
#include "msf/algebra/tower.hpp"
#include "msf/ff/poly.hpp"
#include "msf/scheme/collection.hpp"

namespace msf::engine {

using algebra::Ideal;
using ff::Elem;
using ff::FieldCtx;
using ff::Poly;
using ff::Vec;

enum class EventKind { Init, Compat, Regular, Invariant, Antisym, Matching, Tower, Factor };
const char* to_string(EventKind kind);

/// One refinement of the level decomposition. `index` is the position of the ideal
/// that was split; its two parts take positions index and index + 1. The witness
/// fields that apply to the kind determine the split completely:
///
///   init      sigma = swap of slots 1 and 2
///   compat    slot j, source = lower ideal i: J = e * iota_j(e_i)
///   regular   source = upper ideal, slot j, value k: level set {count = k}
///   invariant source = ideal a, slot k (transposition (k k+1)): (e_a)^tau * e
///   antisym   sigma
///   matching  source = upper ideal, slot/slot2 = i < j, tau = phi_i^-1 phi_j
///   tower     element = zero divisor in level 1, value = number of components
///   factor    no split; value = number of factors
struct Event {
  EventKind kind = EventKind::Init;
  unsigned level = 0;
  std::size_t index = 0;
  std::vector<std::size_t> before;  // dims at the level
  std::vector<std::size_t> after;
  std::size_t source = 0;
  unsigned slot = 0;
  unsigned slot2 = 0;
  std::uint64_t value = 0;
  std::vector<unsigned> sigma;  // 0-based images
  Vec element;
};

struct Part {
  Ideal ideal;
  std::uint64_t uid = 0;
};

/// Per level s = 1..m an ordered list of pairwise orthogonal nonzero ideals of A_s
/// summing to A_s, over the essential tower of f, and the log of events.
class SchemeState {
 public:
  /// Every level starts as the single ideal A_s. f must be monic, squarefree and
  /// split with deg f >= 2; 2 <= m <= deg f.
  SchemeState(const FieldCtx& field, const Poly& f, unsigned m, std::size_t cap = algebra::default_dim_cap());

  const FieldCtx& field() const { return tower_->field(); }
  const Poly& poly() const { return f_; }
  unsigned n() const { return tower_->n(); }
  unsigned m() const { return m_; }
  const algebra::Tower& tower() const { return *tower_; }
  const algebra::LevelAlgebra& algebra(unsigned s) const { return tower_->level(s); }
  const std::vector<Part>& level(unsigned s) const { return levels_.at(s); }
  std::size_t count(unsigned s) const { return levels_.at(s).size(); }
  std::vector<std::size_t> dims(unsigned s) const;
  std::uint64_t version(unsigned s) const { return versions_.at(s); }
  const std::vector<Event>& events() const { return events_; }

  /// Carries out the split described by `ev` (whose `before`/`after` are filled in)
  /// and appends it to the log. Returns the logged event.
  const Event& apply(Event ev);

  /// Sum of all parts is 1, parts are orthogonal idempotents with the recorded dims.
  bool verify() const;

 private:
  void split(unsigned s, std::size_t index, std::vector<Ideal> parts);

  std::shared_ptr<const algebra::Tower> tower_;
  Poly f_;
  unsigned m_;
  std::vector<std::vector<Part>> levels_;
  std::vector<std::uint64_t> versions_;
  std::vector<Event> events_;
  std::uint64_t next_uid_ = 1;
};

/// Builds the state and splits each level s >= 2 by the swap of slots 1 and 2.
SchemeState init_state(const FieldCtx& field, const Poly& f, unsigned m,
                       std::size_t cap = algebra::default_dim_cap());

/// Re-applies a log to a fresh state (init events included).
SchemeState replay(const FieldCtx& field, const Poly& f, unsigned m, const std::vector<Event>& events,
                   std::size_t cap = algebra::default_dim_cap());

/// The s-level imprimitivity space: for s = 2, {h in A_1 : (iota_1 h - iota_2 h) e = 0};
/// for s > 2, {h in e_lower A_{s-1} : (iota_s h - iota_{s-1} h) e = 0}. Echelon basis.
std::vector<Vec> imprimitivity_space(const algebra::Tower& tower, unsigned s, const Vec& e, const Vec& e_lower);

/// Minimal polynomial of h in the algebra e A_s (monic, coefficients in F_q).
Poly minimal_polynomial(const algebra::Algebra& alg, const Vec& h, const Vec& unit);

enum class Strategy { Auto, Evdokimov, SmoothPrime, Fixed };
enum class LevelBudget { Standard, Aggressive };
enum class TowerMode { Off, Sqrt, Always };

Strategy parse_strategy(const std::string& name);
const char* to_string(Strategy s);

/// m for a strategy and degree n: evdokimov max(2, ceil(log2 n)) (aggressive:
/// max(2, ceil(2/3 log2 n))), smooth-prime r + 1 for the largest prime r | n - 1
/// (n prime), fixed the given value, auto the least of the guarantees that apply
/// (2 for even n, smooth-prime for prime n, evdokimov). The result is capped at n.
unsigned choose_levels(Strategy s, unsigned n, unsigned fixed_levels = 0, LevelBudget budget = LevelBudget::Standard);

struct EngineOptions {
  std::size_t cap = algebra::default_dim_cap();
  TowerMode tower = TowerMode::Sqrt;
  Strategy recursion_strategy = Strategy::Auto;
  unsigned depth = 0;
  unsigned max_depth = 0;  // 0: deg f
  /// Called after every event; the oracle monitor hooks in here.
  std::function<void(const SchemeState&, const Event&)> observer;
};

enum class Status { Factored, Scheme, Limit };
const char* to_string(Status s);

struct EngineResult {
  Status status = Status::Scheme;
  std::vector<Poly> factors;  // over F_p, monic, product f (Factored)
  unsigned levels = 0;
  std::string field;  // descriptor of the field the final run used
  std::vector<Event> events;
  std::vector<std::vector<std::size_t>> certificate;  // dims per level (Scheme)
  std::vector<std::string> notes;                     // field extensions, tower attempts
  /// Final state of the run (oracle checks, certificate files, replay).
  std::shared_ptr<const SchemeState> state;
};

/// Refines until level 1 splits (a factorization of f) or nothing changes (a
/// certified m-scheme). f is a monic squarefree polynomial over F_p that splits
/// into distinct linear factors, 2 <= m <= deg f. The field is the least extension
/// with r | q - 1 for all primes r <= m, enlarged and rerun when a step needs other
/// roots of unity.
EngineResult run_engine(const Poly& f, std::uint64_t p, unsigned m, const EngineOptions& opt = {});

struct FactorOptions {
  Strategy strategy = Strategy::Auto;
  unsigned levels = 0;  // for Strategy::Fixed
  LevelBudget budget = LevelBudget::Standard;
  bool complete = false;
  EngineOptions engine;
};

struct FactorResult {
  std::uint64_t p = 0;
  Poly input;                // over F_p, as given
  Status status = Status::Scheme;
  std::vector<Poly> factors;  // of the split squarefree part, monic
  Poly remainder;             // input / product of factors
  bool complete = false;      // every factor is linear
  unsigned levels = 0;
  Strategy strategy = Strategy::Auto;
  std::string field;
  std::vector<Event> events;  // of the top-level run
  std::vector<std::vector<std::size_t>> certificate;
  std::shared_ptr<const SchemeState> state;
  std::string diagnostic;
};

/// Splits off the split squarefree part, runs the engine with the strategy and,
/// with `complete`, recurses on every nonlinear factor (depth at most deg f).
/// Throws InvalidInput for p not an odd prime or f = 0; a resource limit gives
/// Status::Limit with the message in `diagnostic`. Under the smooth-prime strategy a
/// Scheme outcome carries an "unexpected outcome" diagnostic.
FactorResult factor(std::uint64_t p, const Poly& f, const FactorOptions& opt = {});

/// Prime degree n driver with m = r + 1. A certificate comes back with a diagnostic.
FactorResult factor_smooth_prime(std::uint64_t p, const Poly& f, const EngineOptions& opt = {});

/// Support partition of the state (roots[i], a residue mod p, is point i); colour =
/// ideal position.
/// Throws InternalError if the supports do not partition some V^(s) or a support
/// size differs from the ideal's dimension.
scheme::MCollection support_scheme(const SchemeState& st, const std::vector<std::uint64_t>& roots);

/// Observer that recomputes supports after every event and checks that they
/// partition each level and that the event strictly refined the previous partition.
/// Throws InternalError on a mismatch.
class OracleMonitor {
 public:
  explicit OracleMonitor(std::vector<std::uint64_t> roots) : roots_(std::move(roots)) {}
  void operator()(const SchemeState& st, const Event& ev);
  std::size_t checked() const { return checked_; }

 private:
  std::vector<std::uint64_t> roots_;
  std::vector<std::map<std::uint64_t, std::vector<bool>>> supports_;  // [s][uid][rank]
  std::vector<std::vector<std::uint64_t>> uids_;
  std::size_t checked_ = 0;
};

/// Certificate check: the support scheme is a homogeneous antisymmetric m-scheme
/// without matchings. Returns a description of the first failure, empty when sound.
std::string verify_certificate(const SchemeState& st, const std::vector<std::uint64_t>& roots);

}  // namespace msf::engine
