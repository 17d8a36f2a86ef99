#include "qsynth/nl_solver.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <climits>
#include <mutex>
#include <numeric>
#include <set>
#include <string>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "qsynth/error.hpp"
#include "qsynth/gf2.hpp"
#include "qsynth/rng.hpp"
#include "search_internal.hpp"

namespace qsynth {

namespace {

using Clock = std::chrono::steady_clock;
using Tuple = std::vector<PatternIndex>;

// Shared best-so-far across workers. limit() is the largest AND count that
// is still worth reporting.
class Incumbent {
 public:
  Incumbent(std::size_t solmax, int limit) : solmax_(std::max<std::size_t>(solmax, 1)), limit_(limit) {}

  int limit() const noexcept { return limit_.load(std::memory_order_relaxed); }

  void offer(const Tuple& ops) {
    const int count = static_cast<int>(ops.size());
    std::lock_guard lock(mu_);
    if (count > limit_.load(std::memory_order_relaxed)) return;
    if (count < best_) {
      best_ = count;
      found_.clear();
      seen_.clear();
    }
    Tuple key = ops;
    std::sort(key.begin(), key.end());
    if (found_.size() < solmax_ && seen_.insert(key).second) found_.push_back(ops);
    limit_.store(found_.size() >= solmax_ ? best_ - 1 : best_, std::memory_order_relaxed);
  }

  /// Caps the limit from outside, e.g. for a fixed deepening bound.
  void restrict(int limit) {
    std::lock_guard lock(mu_);
    if (limit < limit_.load(std::memory_order_relaxed)) limit_.store(limit, std::memory_order_relaxed);
  }

  bool empty() const {
    std::lock_guard lock(mu_);
    return found_.empty();
  }
  int best() const {
    std::lock_guard lock(mu_);
    return best_;
  }
  std::vector<Tuple> found() const {
    std::lock_guard lock(mu_);
    return found_;
  }

 private:
  mutable std::mutex mu_;
  std::size_t solmax_;
  std::atomic<int> limit_;
  int best_ = INT_MAX;
  std::vector<Tuple> found_;
  std::set<Tuple> seen_;
};

struct Control {
  std::optional<Clock::time_point> deadline;
  std::atomic<bool> timed_out{false};
  std::atomic<std::uint64_t> nodes{0};

  /// Counts a node; returns false once the deadline has passed.
  bool tick() {
    const auto count = nodes.fetch_add(1, std::memory_order_relaxed);
    if (timed_out.load(std::memory_order_relaxed)) return false;
    if (deadline && (count & 255) == 0 && Clock::now() >= *deadline) {
      timed_out.store(true, std::memory_order_relaxed);
      return false;
    }
    return true;
  }
  bool stopped() const { return timed_out.load(std::memory_order_relaxed); }

  /// Deadline check without counting a node.
  bool expired() {
    if (stopped()) return true;
    if (deadline && Clock::now() >= *deadline) timed_out.store(true, std::memory_order_relaxed);
    return stopped();
  }
};

// Echelon basis of at most 40 vectors, cheap to copy during enumeration.
// Rows are kept in decreasing order of their leading bit.
class SmallBasis {
 public:
  QuadCode reduce(QuadCode v) const noexcept {
    for (int i = 0; i < size_; ++i) v = std::min(v, v ^ rows_[i]);
    return v;
  }
  bool contains(QuadCode v) const noexcept { return reduce(v) == 0; }
  bool insert(QuadCode v) noexcept {
    v = reduce(v);
    if (v == 0 || size_ == static_cast<int>(rows_.size())) return false;
    int i = size_++;
    for (; i > 0 && rows_[i - 1] < v; --i) rows_[i] = rows_[i - 1];
    rows_[i] = v;
    return true;
  }
  int dim() const noexcept { return size_; }
  std::span<const QuadCode> rows() const noexcept { return {rows_.data(), static_cast<std::size_t>(size_)}; }

 private:
  std::array<QuadCode, 40> rows_{};
  int size_ = 0;
};

template <typename Fn>
void run_pool(std::size_t items, unsigned workers, Fn&& fn) {
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(items, 1))));
  std::atomic<std::size_t> next{0};
  const auto loop = [&](unsigned worker) {
    for (std::size_t i = next.fetch_add(1); i < items; i = next.fetch_add(1)) fn(i, worker);
  };
  if (workers == 1) {
    loop(0);
    return;
  }
  std::vector<std::jthread> threads;
  for (unsigned w = 0; w < workers; ++w) threads.emplace_back(loop, w);
}

struct VectorHash {
  std::size_t operator()(const std::vector<QuadCode>& v) const noexcept {
    std::uint64_t h = 0x84222325cbf29ce4ULL;
    for (auto x : v) h = (h ^ x) * 0x100000001b3ULL + (h >> 29);
    return static_cast<std::size_t>(h);
  }
};

// Problem data shared by both searches.
struct Problem {
  const PatternBank& bank;
  const detail::RankOracle& oracle;
  std::vector<QuadCode> rows;  // nonzero, distinct quadratic rows
  Gf2Basis row_space;
  int global_bound = 0;
};

Problem make_problem(const TruncatedAnf& tanf, const PatternBank& bank) {
  Problem p{bank, detail::rank_oracle(bank.n()), {}, {}, 0};
  for (const auto& r : tanf.rows) {
    if (r.quad != 0 && std::find(p.rows.begin(), p.rows.end(), r.quad) == p.rows.end()) p.rows.push_back(r.quad);
  }
  for (auto y : p.rows) p.row_space.insert(y);
  p.global_bound = lower_bound_remaining(bank.n(), {}, p.rows);
  return p;
}

// Exhaustive branch and bound for a fixed AND bound. Each node picks the
// uncovered row needing the fewest new patterns and branches over every
// minimal set of new patterns that brings it into the span.
class ExhaustiveSearch {
 public:
  ExhaustiveSearch(const Problem& problem, int bound, bool use_lower_bound, Incumbent& incumbent, Control& control)
      : p_(problem), bound_(bound), use_lb_(use_lower_bound), incumbent_(incumbent), control_(control) {}

  struct Expansion {
    int row = -1;
    std::vector<Tuple> children;
  };

  /// Branches of the node reached after choosing ops; row = -1 when every
  /// row is covered or the node is pruned.
  Expansion expand(const Tuple& ops, bool& covered) {
    Gf2Basis span;
    for (std::size_t t = 0; t < ops.size(); ++t) span.insert(code(ops[t]), std::uint64_t{1} << t);
    covered = false;
    return expand(ops, span, covered);
  }

  /// Returns true if a solution was found below ops.
  bool search(Tuple& ops, const Gf2Basis& span) {
    if (!control_.tick()) return false;
    std::vector<QuadCode> key = span.canonical();
    if (memo_.contains(key)) return false;
    bool covered = false;
    Expansion e = expand(ops, span, covered);
    if (covered) {
      incumbent_.offer(ops);
      return true;
    }
    if (e.row < 0) return false;
    bool found = false;
    for (const auto& u : e.children) {
      if (control_.stopped() || bound() < static_cast<int>(ops.size() + u.size())) break;
      Gf2Basis child = span;
      for (auto i : u) {
        child.insert(code(i), std::uint64_t{1} << ops.size());
        ops.push_back(i);
      }
      found |= search(ops, child);
      ops.resize(ops.size() - u.size());
    }
    if (!found && !control_.stopped() && incumbent_.limit() >= bound_) {
      if (memo_.size() > kMemoCap) memo_.clear();
      memo_.insert(std::move(key));
    }
    return found;
  }

  bool search_from(Tuple ops) {
    Gf2Basis span;
    for (std::size_t t = 0; t < ops.size(); ++t) span.insert(code(ops[t]), std::uint64_t{1} << t);
    return search(ops, span);
  }

 private:
  static constexpr std::size_t kMemoCap = 1u << 22;

  QuadCode code(PatternIndex i) const { return p_.bank.set_op[i].code; }
  int bound() const { return std::min(bound_, incumbent_.limit()); }

  Expansion expand(const Tuple& ops, const Gf2Basis& span, bool& covered) {
    Expansion e;
    const int used = static_cast<int>(ops.size());
    const int limit = bound();
    std::vector<int> open;
    for (std::size_t r = 0; r < p_.rows.size(); ++r) {
      if (!span.contains(p_.rows[r])) open.push_back(static_cast<int>(r));
    }
    if (open.empty()) {
      covered = true;
      return e;
    }
    if (used >= limit) return e;

    Gf2Basis joint = span;
    for (int r : open) joint.insert(p_.rows[r]);
    const int slack = use_lb_ ? limit - joint.dim() : limit - used;
    if (slack < 0) return e;

    const std::vector<QuadCode> generators = span.canonical();
    int row = -1;
    int row_distance = INT_MAX;
    int worst = 0;
    for (int r : open) {
      const int d = detail::coset_distance(p_.oracle, p_.rows[r], generators, 64);
      worst = std::max(worst, d);
      if (d < row_distance) {
        row_distance = d;
        row = r;
      }
    }
    if (use_lb_ && used + worst > limit) return e;
    if (use_lb_) {
      std::vector<QuadCode> open_rows;
      for (int r : open) open_rows.push_back(p_.rows[r]);
      const int sub = detail::subspace_bound(p_.oracle, generators, open_rows);
      if (sub >= 0 && used + sub > limit) return e;
    }
    if (!use_lb_) row_distance = 1;

    e.row = row;
    build_tables(span, joint);
    const QuadCode target = span.reduce(p_.rows[row]);
    for (int j = row_distance; j <= limit - used; ++j) {
      std::vector<Tuple> level;
      Tuple chosen;
      SmallBasis independent;
      SmallBasis images;
      enumerate(j, target, 0, chosen, independent, images, use_lb_ ? slack : INT_MAX, level);
      std::vector<std::pair<int, Tuple>> keyed;
      keyed.reserve(level.size());
      for (auto& u : level) {
        QuadCode sum = p_.rows[row];
        for (auto i : u) sum ^= code(i);
        std::uint64_t tag = 0;
        span.reduce(sum, tag);
        keyed.push_back({std::popcount(tag), std::move(u)});
      }
      std::sort(keyed.begin(), keyed.end());
      for (auto& kv : keyed) e.children.push_back(std::move(kv.second));
    }
    return e;
  }

  void build_tables(const Gf2Basis& span, const Gf2Basis& joint) {
    const auto codes = p_.bank.set_op.codes();
    by_residue_.clear();
    buckets_.clear();
    live_.clear();
    residue_.assign(codes.size(), 0);
    image_.assign(codes.size(), 0);
    for (std::size_t i = 0; i < codes.size(); ++i) {
      const QuadCode rv = span.reduce(codes[i]);
      if (rv == 0) continue;
      const auto idx = static_cast<PatternIndex>(i);
      residue_[i] = rv;
      image_[i] = joint.reduce(codes[i]);
      live_.push_back(idx);
      by_residue_.push_back({rv, idx});
      buckets_[image_[i]].push_back(idx);
    }
    std::sort(by_residue_.begin(), by_residue_.end());
  }

  // Collects sets {u_1 < ... < u_j} with independent residues mod the span
  // summing to target, whose images outside span + rows have rank <= slack.
  void enumerate(int j, QuadCode target, PatternIndex first, Tuple& chosen, const SmallBasis& independent,
                 const SmallBasis& images, int slack, std::vector<Tuple>& out) {
    if ((++visits_ & 4095) == 0 && control_.expired()) return;
    if (control_.stopped()) return;
    if (static_cast<int>(chosen.size()) == j - 1) {
      auto it = std::lower_bound(by_residue_.begin(), by_residue_.end(), std::pair<QuadCode, PatternIndex>{target, first});
      for (; it != by_residue_.end() && it->first == target; ++it) {
        if (independent.contains(target)) break;
        chosen.push_back(it->second);
        out.push_back(chosen);
        chosen.pop_back();
      }
      return;
    }
    const auto visit = [&](PatternIndex i) {
      SmallBasis next_independent = independent;
      if (!next_independent.insert(residue_[i])) return;
      SmallBasis next_images = images;
      next_images.insert(image_[i]);
      if (next_images.dim() > slack) return;
      chosen.push_back(i);
      enumerate(j, target ^ residue_[i], i + 1, chosen, next_independent, next_images, slack, out);
      chosen.pop_back();
    };
    if (images.dim() < slack) {
      for (auto it = std::lower_bound(live_.begin(), live_.end(), first); it != live_.end(); ++it) visit(*it);
      return;
    }
    // Rank budget spent: stay inside the span of the images chosen so far.
    const auto basis = images.rows();
    QuadCode e = 0;
    const std::uint64_t count = std::uint64_t{1} << basis.size();
    for (std::uint64_t g = 0; g < count; ++g) {
      if (g != 0) e ^= basis[std::countr_zero(g)];
      auto bucket = buckets_.find(e);
      if (bucket == buckets_.end()) continue;
      for (auto it = std::lower_bound(bucket->second.begin(), bucket->second.end(), first); it != bucket->second.end();
           ++it) {
        visit(*it);
      }
    }
  }

  const Problem& p_;
  int bound_;
  bool use_lb_;
  Incumbent& incumbent_;
  Control& control_;
  std::unordered_set<std::vector<QuadCode>, VectorHash> memo_;

  std::vector<std::pair<QuadCode, PatternIndex>> by_residue_;
  std::unordered_map<QuadCode, std::vector<PatternIndex>> buckets_;
  std::vector<PatternIndex> live_;
  std::vector<QuadCode> residue_;
  std::vector<QuadCode> image_;
  std::uint64_t visits_ = 0;
};

// Row-ordered depth-first search over test_xor candidates: the first
// branch_width candidates of the cheapest j are expanded per node.
class HeuristicSearch {
 public:
  HeuristicSearch(const Problem& problem, const SearchLimits& limits, Incumbent& incumbent, Control& control,
                  std::uint64_t node_cap)
      : p_(problem), limits_(limits), incumbent_(incumbent), control_(control), node_cap_(node_cap) {}

  void run(const Tuple& init, const std::vector<int>& order) {
    order_ = order;
    nodes_ = 0;
    Tuple ops;
    Gf2Basis span;
    for (auto i : init) {
      if (span.insert(code(i), std::uint64_t{1} << ops.size())) ops.push_back(i);
    }
    dfs(ops, span, 0);
  }

  /// First candidate only; returns the AND count reached.
  int greedy(const std::vector<int>& order) {
    order_ = order;
    Tuple ops;
    Gf2Basis span;
    for (std::size_t pos = 0; pos < order_.size(); ++pos) {
      const QuadCode y = p_.rows[order_[pos]];
      if (span.contains(y)) continue;
      auto cands = candidates(ops, span, y, 1, INT_MAX);
      for (auto i : cands.front()) {
        span.insert(code(i), std::uint64_t{1} << ops.size());
        ops.push_back(i);
      }
    }
    return static_cast<int>(ops.size());
  }

 private:
  QuadCode code(PatternIndex i) const { return p_.bank.set_op[i].code; }

  void dfs(Tuple& ops, const Gf2Basis& span, std::size_t pos) {
    if (!control_.tick() || ++nodes_ > node_cap_) return;
    while (pos < order_.size() && span.contains(p_.rows[order_[pos]])) ++pos;
    if (pos == order_.size()) {
      incumbent_.offer(ops);
      return;
    }
    const int limit = incumbent_.limit();
    const int used = static_cast<int>(ops.size());
    if (used >= limit) return;
    if (limits_.use_lower_bound) {
      std::vector<QuadCode> codes;
      for (auto i : ops) codes.push_back(code(i));
      std::vector<QuadCode> open;
      for (std::size_t r = pos; r < order_.size(); ++r) open.push_back(p_.rows[order_[r]]);
      if (used + lower_bound_remaining(p_.bank.n(), codes, open) > limit) return;
    }
    const QuadCode y = p_.rows[order_[pos]];
    for (const auto& u : candidates(ops, span, y, limits_.branch_width, limit - used)) {
      if (control_.stopped() || nodes_ > node_cap_) return;
      if (used + static_cast<int>(u.size()) > incumbent_.limit()) continue;
      Gf2Basis child = span;
      for (auto i : u) {
        child.insert(code(i), std::uint64_t{1} << ops.size());
        ops.push_back(i);
      }
      dfs(ops, child, pos + 1);
      ops.resize(ops.size() - u.size());
    }
  }

  // New-pattern sets bringing y into the span, from the smallest j that
  // yields any, ascending k within it.
  std::vector<Tuple> candidates(const Tuple& ops, const Gf2Basis& span, QuadCode y, std::size_t width, int max_new) {
    std::vector<QuadCode> codes;
    for (auto i : ops) codes.push_back(code(i));
    TestXorOptions options;
    options.nb_quad_max = limits_.nb_quad_max;
    options.seed = limits_.seed;
    std::vector<Tuple> out;
    std::set<Tuple> seen;
    for (int j = 1; j <= std::min(4, max_new) && out.empty(); ++j) {
      const int max_k = std::min<int>(static_cast<int>(codes.size()), options.max_k);
      for (int k = 0; k <= max_k && out.size() < width; ++k) {
        for (auto& c : test_xor(codes, y, k, j, p_.bank, options)) {
          if (!independent(span, c.added) || !seen.insert(c.added).second) continue;
          out.push_back(std::move(c.added));
          if (out.size() >= width) break;
        }
        if (control_.stopped()) return out;
      }
    }
    if (out.empty()) {
      // Direct decomposition of the residue always works.
      Tuple u;
      for (auto part : detail::symplectic_split(p_.bank.n(), span.reduce(y))) u.push_back(*p_.bank.set_op.find(part));
      std::sort(u.begin(), u.end());
      if (static_cast<int>(u.size()) <= max_new) out.push_back(std::move(u));
    }
    return out;
  }

  bool independent(const Gf2Basis& span, const Tuple& u) const {
    Gf2Basis b = span;
    for (auto i : u) {
      if (!b.insert(code(i))) return false;
    }
    return true;
  }

  const Problem& p_;
  const SearchLimits& limits_;
  Incumbent& incumbent_;
  Control& control_;
  std::uint64_t node_cap_;
  std::uint64_t nodes_ = 0;
  std::vector<int> order_;
};

NlSolution make_solution(const Tuple& ops, const TruncatedAnf& tanf, const PatternBank& bank) {
  NlSolution s;
  Gf2Basis span;
  for (std::size_t t = 0; t < ops.size(); ++t) {
    s.ops.push_back(bank.set_op[ops[t]]);
    span.insert(s.ops.back().code, std::uint64_t{1} << t);
  }
  for (const auto& r : tanf.rows) {
    std::uint64_t tag = 0;
    if (span.reduce(r.quad, tag) != 0) throw Error(ErrorCode::InternalInconsistency, "solution misses an output row");
    s.combos.push_back(tag);
  }
  return s;
}

void check_inputs(const TruncatedAnf& tanf, const PatternBank& bank) {
  if (tanf.n != bank.n()) {
    throw Error(ErrorCode::InvalidArgument, "bank is for n=" + std::to_string(bank.n()) + ", S-box has n=" +
                                                std::to_string(tanf.n));
  }
}

// Rows other than first, in index order.
std::vector<int> rest_of(int first, std::size_t count) {
  std::vector<int> out;
  for (int r = 0; r < static_cast<int>(count); ++r) {
    if (r != first) out.push_back(r);
  }
  return out;
}

void heuristic_phase(const Problem& p, const SearchLimits& limits, const std::array<std::size_t, 3>& caps,
                     std::uint64_t node_cap, Incumbent& incumbent, Control& control) {
  if (p.rows.empty()) return;
  // Cheapest row first; ties go to the lowest index.
  int first = 0;
  int cost = INT_MAX;
  for (std::size_t r = 0; r < p.rows.size(); ++r) {
    const int c = p.oracle.rank(p.rows[r]) / 2;
    if (c < cost) {
      cost = c;
      first = static_cast<int>(r);
    }
  }
  TestXorOptions options;
  options.nb_quad_max = limits.nb_quad_max;
  options.seed = limits.seed;
  const BitCost init = bit_cost(p.rows[first], p.bank, options);
  const std::size_t perms = cost <= 1 ? caps[0] : caps[std::min(cost, 4) - 2];

  struct Item {
    std::size_t init;
    std::vector<int> order;
  };
  std::vector<Item> items;
  Rng rng(limits.seed);
  std::vector<std::vector<int>> orders;
  for (std::size_t k = 0; k < std::max<std::size_t>(perms, 1); ++k) {
    std::vector<int> rest = rest_of(first, p.rows.size());
    if (k > 0) rng.shuffle(std::span<int>(rest));
    rest.insert(rest.begin(), first);
    orders.push_back(std::move(rest));
  }
  for (std::size_t k = 0; k < orders.size(); ++k) {
    for (std::size_t s = 0; s < init.init_sets.size(); ++s) items.push_back({s, orders[k]});
  }
  run_pool(items.size(), limits.worker_count, [&](std::size_t i, unsigned) {
    if (control.stopped() || incumbent.limit() < p.global_bound) return;
    HeuristicSearch search(p, limits, incumbent, control, node_cap);
    search.run(init.init_sets[items[i].init], items[i].order);
  });
}

// Runs one deepening level; the root's branches are the work items.
void exhaustive_level(const Problem& p, int bound, const SearchLimits& limits, Incumbent& incumbent, Control& control) {
  ExhaustiveSearch root(p, bound, limits.use_lower_bound, incumbent, control);
  bool covered = false;
  const auto expansion = root.expand({}, covered);
  if (covered) {
    incumbent.offer({});
    return;
  }
  const auto& children = expansion.children;
  const unsigned workers = std::max(1u, limits.worker_count);
  std::vector<std::unique_ptr<ExhaustiveSearch>> searches;
  for (unsigned w = 0; w < workers; ++w) {
    searches.push_back(std::make_unique<ExhaustiveSearch>(p, bound, limits.use_lower_bound, incumbent, control));
  }
  run_pool(children.size(), workers, [&](std::size_t i, unsigned w) {
    if (control.stopped() || incumbent.limit() < bound) return;
    searches[w]->search_from(children[i]);
  });
}

}  // namespace

std::array<std::size_t, 3> default_perm_caps(int n) {
  if (n >= 9) return {50, 5, 2};
  return {50, 10, 5};
}

bool check_solution(const NlSolution& solution, const TruncatedAnf& tanf) {
  if (solution.combos.size() != tanf.rows.size()) return false;
  for (std::size_t i = 0; i < tanf.rows.size(); ++i) {
    QuadCode sum = 0;
    for (std::uint64_t c = solution.combos[i]; c != 0; c &= c - 1) {
      const auto t = static_cast<std::size_t>(std::countr_zero(c));
      if (t >= solution.ops.size()) return false;
      sum ^= solution.ops[t].code;
    }
    if (sum != tanf.rows[i].quad) return false;
  }
  return true;
}

NlResult solve_nonlinear(const TruncatedAnf& tanf, const PatternBank& bank, const SearchLimits& limits) {
  check_inputs(tanf, bank);
  if (limits.nb_and_max && *limits.nb_and_max < 0) throw Error(ErrorCode::InvalidArgument, "nb_and_max must be >= 0");
  const Problem p = make_problem(tanf, bank);
  Control control;
  if (limits.time_budget) control.deadline = Clock::now() + *limits.time_budget;

  NlResult result;
  result.lower_bound = p.global_bound;
  const int cap = limits.nb_and_max.value_or(INT_MAX);
  Incumbent incumbent(limits.solmax, cap);
  const bool exhaustive = bank.n() <= limits.exhaustive_max_n;

  if (p.global_bound <= cap) {
    const auto caps = limits.nb_perm_max.value_or(default_perm_caps(bank.n()));
    if (exhaustive && bank.n() < 7) {
      // Cheap warm start so a time-limited run still reports something.
      heuristic_phase(p, limits, {std::min<std::size_t>(caps[0], 4), std::min<std::size_t>(caps[1], 2), 1}, 2000,
                      incumbent, control);
    } else {
      heuristic_phase(p, limits, caps, 200000, incumbent, control);
    }
  }

  bool optimal = !incumbent.empty() && incumbent.best() <= p.global_bound;
  std::vector<Tuple> found = incumbent.found();
  if (exhaustive && !optimal && p.global_bound <= cap) {
    const int known = incumbent.empty() ? INT_MAX : incumbent.best();
    // Refuting every bound below a known solution already proves it optimal.
    const int top = known == INT_MAX ? cap : std::min(cap, known - 1);
    for (int bound = p.global_bound; bound <= top && !control.stopped(); ++bound) {
      Incumbent exact(limits.solmax, bound);
      exhaustive_level(p, bound, limits, exact, control);
      if (!exact.empty()) {
        found = exact.found();
        break;
      }
    }
    optimal = !control.stopped();
  }

  result.nodes = control.nodes.load();
  if (found.empty()) {
    if (control.stopped()) throw Error(ErrorCode::TimeBudgetExhausted, "no solution found within the time budget");
    throw Error(ErrorCode::NoSolutionWithinBound,
                "no solution with at most " + std::to_string(cap) + " AND gates (lower bound " +
                    std::to_string(p.global_bound) + ")");
  }
  for (const auto& ops : found) result.solutions.push_back(make_solution(ops, tanf, bank));
  if (optimal) {
    result.status = SearchStatus::Optimal;
  } else {
    result.status = control.stopped() ? SearchStatus::TimeBudgetExhausted : SearchStatus::BestFound;
  }
  return result;
}

int greedy_and_count(const TruncatedAnf& tanf, const PatternBank& bank, std::span<const int> order) {
  check_inputs(tanf, bank);
  const Problem p = make_problem(tanf, bank);
  // Map row indices of the S-box onto the deduplicated nonzero rows.
  std::vector<int> mapped;
  for (int r : order) {
    if (r < 0 || r >= static_cast<int>(tanf.rows.size())) throw Error(ErrorCode::InvalidArgument, "row out of range");
    const QuadCode y = tanf.rows[r].quad;
    auto it = std::find(p.rows.begin(), p.rows.end(), y);
    if (it != p.rows.end()) mapped.push_back(static_cast<int>(it - p.rows.begin()));
  }
  SearchLimits limits;
  Control control;
  Incumbent incumbent(1, INT_MAX);
  HeuristicSearch search(p, limits, incumbent, control, UINT64_MAX);
  return search.greedy(mapped);
}

std::pair<int, int> order_sensitivity_probe(const TruncatedAnf& tanf, const PatternBank& bank,
                                            std::span<const int> order_a, std::span<const int> order_b) {
  return {greedy_and_count(tanf, bank, order_a), greedy_and_count(tanf, bank, order_b)};
}

}  // namespace qsynth
