#include "qsynth/lin_solver.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <map>
#include <span>
#include <string>
#include <thread>
#include <unordered_map>

#include "qsynth/error.hpp"
#include "qsynth/rng.hpp"

namespace qsynth {

namespace {

bool is_free(LinCode l) { return std::popcount(l) <= 1; }

class Scheduler {
 public:
  Scheduler(int n, const LinLimits& limits) : limits_(limits) {
    program_.n = n;
    for (int i = 0; i < n; ++i) add_available(lin_var(n, i));
  }

  bool has(LinCode l) const { return index_.contains(l); }

  void seed(LinCode l) {
    if (has(l)) return;
    const LinCode low = l & (~l + 1);
    push({l, l ^ low, low});
  }

  /// Schedules l with the fewest operands test_xor_lin finds.
  void schedule(LinCode l) {
    if (has(l)) return;
    const int weight = std::popcount(l);
    for (int j = 2; j <= weight; ++j) {
      auto operands = test_xor_lin(l, j, available_, limits_.work_cap);
      if (operands.empty()) continue;
      emit_chain(operands);
      return;
    }
    // Inputs alone always work.
    std::vector<LinCode> inputs;
    for (LinCode rest = l; rest != 0; rest &= rest - 1) inputs.push_back(rest & (~rest + 1));
    emit_chain(inputs);
  }

  LinProgram take() { return std::move(program_); }
  std::size_t cost() const { return program_.steps.size(); }

 private:
  void add_available(LinCode l) {
    index_.emplace(l, available_.size());
    available_.push_back(l);
  }

  void push(const LinStep& s) {
    program_.steps.push_back(s);
    add_available(s.value);
  }

  // Left-to-right chain; every prefix becomes available.
  void emit_chain(const std::vector<LinCode>& operands) {
    LinCode acc = operands.front();
    for (std::size_t t = 1; t < operands.size(); ++t) {
      const LinCode next = acc ^ operands[t];
      if (!has(next)) push({next, acc, operands[t]});
      acc = next;
    }
  }

  const LinLimits& limits_;
  LinProgram program_;
  std::vector<LinCode> available_;
  std::unordered_map<LinCode, std::size_t> index_;
};

struct Attempt {
  LinProgram program;
  bool within_budget = false;
};

Attempt run_order(const LinRequirements& reqs, const std::vector<LinCode>& order, const LinLimits& limits) {
  Scheduler s(reqs.n, limits);
  for (auto l : reqs.weight_two()) s.seed(l);
  for (auto l : order) {
    s.schedule(l);
    if (limits.nb_xor_max && s.cost() > *limits.nb_xor_max) return {s.take(), false};
  }
  return {s.take(), true};
}

}  // namespace

std::vector<LinCode> LinRequirements::weight_two() const {
  std::vector<LinCode> out;
  for (const auto& f : forms) {
    if (std::popcount(f.code) == 2) out.push_back(f.code);
  }
  return out;
}

std::vector<LinCode> LinRequirements::heavy() const {
  std::vector<LinCode> out;
  for (const auto& f : forms) {
    if (std::popcount(f.code) >= 3) out.push_back(f.code);
  }
  return out;
}

bool LinRequirements::contains(LinCode code) const {
  return std::any_of(forms.begin(), forms.end(), [code](const LinForm& f) { return f.code == code; });
}

LinRequirements derive_linear_requirements(const NlSolution& solution, const TruncatedAnf& tanf) {
  std::map<LinCode, unsigned> found;
  const auto add = [&](LinCode l, LinSource source) {
    if (!is_free(l)) found[l] |= source;
  };
  for (const auto& r : tanf.rows) add(r.lin, kOutputLinearPart);
  for (const auto& op : solution.ops) {
    add(op.l1, kFactor);
    add(op.l2, kFactor);
    add(op.residual, kResidual);
  }
  LinRequirements reqs;
  reqs.n = tanf.n;
  for (const auto& [code, sources] : found) reqs.forms.push_back({code, sources});
  return reqs;
}

std::vector<LinCode> LinProgram::available() const {
  std::vector<LinCode> out;
  for (int i = 0; i < n; ++i) out.push_back(lin_var(n, i));
  for (const auto& s : steps) out.push_back(s.value);
  return out;
}

std::vector<LinCode> test_xor_lin(LinCode target, int j, const std::vector<LinCode>& available,
                                  std::uint64_t work_cap) {
  if (j <= 0) return {};
  std::unordered_map<LinCode, std::size_t> where;
  for (std::size_t i = 0; i < available.size(); ++i) where.emplace(available[i], i);
  if (j == 1) {
    if (where.contains(target)) return {target};
    return {};
  }
  std::vector<std::size_t> picked;
  std::uint64_t work = 0;
  const auto dfs = [&](auto&& self, std::size_t start, LinCode rest) -> bool {
    if (++work > work_cap) return false;
    if (static_cast<int>(picked.size()) == j - 1) {
      auto it = where.find(rest);
      if (it == where.end() || it->second < start) return false;
      picked.push_back(it->second);
      return true;
    }
    const std::size_t remaining = static_cast<std::size_t>(j - 1) - picked.size();
    for (std::size_t i = start; i + remaining < available.size(); ++i) {
      if (available[i] == 0 || available[i] == rest) continue;
      picked.push_back(i);
      if (self(self, i + 1, rest ^ available[i])) return true;
      picked.pop_back();
      if (work > work_cap) return false;
    }
    return false;
  };
  if (!dfs(dfs, 0, target)) return {};
  std::vector<LinCode> out;
  for (auto i : picked) out.push_back(available[i]);
  return out;
}

LinProgram solve_linear(const LinRequirements& reqs, const LinLimits& limits) {
  std::vector<LinCode> base = reqs.heavy();
  std::stable_sort(base.begin(), base.end(), [](LinCode a, LinCode b) { return std::popcount(a) < std::popcount(b); });
  const std::size_t count = std::max<std::size_t>(limits.permutations, 1);
  std::vector<std::vector<LinCode>> orders(count, base);
  Rng rng(limits.seed);
  for (std::size_t k = 1; k < count; ++k) rng.shuffle(std::span<LinCode>(orders[k]));

  std::vector<Attempt> attempts(count);
  const auto deadline = limits.time_budget ? std::optional(std::chrono::steady_clock::now() + *limits.time_budget)
                                           : std::nullopt;
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t k = next.fetch_add(1); k < count; k = next.fetch_add(1)) {
      // The first order always runs so a budget never leaves us empty-handed.
      if (k > 0 && deadline && std::chrono::steady_clock::now() >= *deadline) return;
      attempts[k] = run_order(reqs, orders[k], limits);
    }
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(limits.worker_count, static_cast<unsigned>(count)));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  }

  const Attempt* best = nullptr;
  for (const auto& a : attempts) {
    if (!a.within_budget) continue;
    if (best == nullptr || a.program.xor_count() < best->program.xor_count()) best = &a;
  }
  if (best == nullptr) {
    throw Error(ErrorCode::XorBoundInfeasible,
                "no linear schedule within " + std::to_string(limits.nb_xor_max.value_or(0)) + " XORs");
  }
  return best->program;
}

std::size_t total_xor_count(const NlSolution& solution, const LinProgram& program, const TruncatedAnf& tanf) {
  std::size_t total = program.xor_count();
  for (const auto& op : solution.ops) total += op.residual != 0 ? 1 : 0;
  for (std::size_t i = 0; i < tanf.rows.size(); ++i) {
    const auto& r = tanf.rows[i];
    const std::size_t terms = static_cast<std::size_t>(std::popcount(solution.combos[i])) + (r.lin != 0 ? 1 : 0) +
                              (r.constant ? 1 : 0);
    total += terms == 0 ? 1 : terms - 1;
  }
  return total;
}

}  // namespace qsynth
