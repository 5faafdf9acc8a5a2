#include "vcx/search.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>
#include <vector>

#include "vcx/certificates.hpp"
#include "vcx/combinatorics.hpp"
#include "vcx/constructions.hpp"
#include "vcx/errors.hpp"
#include "vcx/trace_occupancy.hpp"

namespace vcx {

namespace {

using Clock = std::chrono::steady_clock;

/// Shared state for one branch-and-bound run. Candidate lists hold indices
/// into `cands` in colex order; the include branch is explored first.
class Engine {
public:
    Engine(int n, int k, std::uint64_t required, const SearchBudget& budget)
        : n_(n), k_(k), required_(required), budget_(budget), start_(Clock::now()) {
        for (const Subset& s : k_subsets(n, k)) cands_.push_back(s.bits());
    }

    /// Keep searching only for families strictly larger than `floor`.
    void set_floor(std::uint64_t floor) { floor_ = floor; }
    /// Stop everything once a family of this size is found.
    void set_stop_at(std::uint64_t size) { stop_at_ = size; }
    void seed_incumbent(const std::vector<std::uint64_t>& words) {
        best_ = words.size();
        best_words_ = words;
    }

    void run() {
        std::vector<std::uint32_t> all(cands_.size());
        for (std::uint32_t i = 0; i < all.size(); ++i) all[i] = i;
        if (all.empty()) {
            exhausted_ = true;
            return;
        }
        // Ground-set symmetry: some optimal nonempty family contains the least
        // candidate, so the root includes it.
        TraceOccupancy root(k_, required_);
        root.add(cands_[0]);
        offer(root);
        std::vector<std::uint32_t> rest(all.begin() + 1, all.end());
        std::vector<std::uint32_t> live = filter(root, rest, 0);

        std::vector<Task> tasks;
        split(root, live, tasks, split_depth());
        std::atomic<std::size_t> next{0};
        const auto worker = [&] {
            for (;;) {
                const std::size_t t = next.fetch_add(1);
                if (t >= tasks.size() || stop_.load()) return;
                TraceOccupancy occ(k_, required_);
                for (std::uint64_t w : tasks[t].chosen) occ.add(w);
                dfs(occ, tasks[t].live);
            }
        };
        const int threads = std::max(1, budget_.threads);
        if (threads == 1) {
            worker();
        } else {
            std::vector<std::jthread> pool;
            for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        }
        exhausted_ = !stop_.load();
    }

    std::uint64_t best() const { return best_; }
    const std::vector<std::uint64_t>& best_words() const { return best_words_; }
    bool exhausted() const { return exhausted_; }
    bool budget_hit() const { return budget_hit_.load(); }
    std::uint64_t nodes() const { return nodes_.load(); }

private:
    struct Task {
        std::vector<std::uint64_t> chosen;
        std::vector<std::uint32_t> live;
    };

    int split_depth() const { return budget_.threads > 1 ? 2 : 0; }

    std::vector<std::uint32_t> filter(const TraceOccupancy& occ,
                                      const std::vector<std::uint32_t>& from,
                                      std::size_t begin) const {
        std::vector<std::uint32_t> out;
        out.reserve(from.size() - std::min(begin, from.size()));
        for (std::size_t t = begin; t < from.size(); ++t) {
            if (occ.can_add(cands_[from[t]])) out.push_back(from[t]);
        }
        return out;
    }

    std::uint64_t threshold() const {
        return std::max(best_.load(), floor_);
    }

    void offer(const TraceOccupancy& occ) {
        const std::uint64_t size = occ.size();
        if (size <= best_.load()) return;
        std::lock_guard lock(mu_);
        if (size <= best_.load()) return;
        best_words_.assign(occ.members().begin(), occ.members().end());
        best_.store(size);
        if (size >= stop_at_) stop_.store(true);
    }

    bool tick() {
        const std::uint64_t count = nodes_.fetch_add(1, std::memory_order_relaxed) + 1;
        if (budget_.max_nodes != 0 && count > budget_.max_nodes) {
            budget_hit_.store(true);
            stop_.store(true);
        }
        if (budget_.timeout.count() != 0 && (count & 1023) == 0 &&
            Clock::now() - start_ > budget_.timeout) {
            budget_hit_.store(true);
            stop_.store(true);
        }
        return !stop_.load(std::memory_order_relaxed);
    }

    /// Prefix expansion for parallel runs: tasks are the subtrees at `depth`.
    void split(TraceOccupancy& occ, const std::vector<std::uint32_t>& live,
               std::vector<Task>& tasks, int depth) {
        if (depth == 0 || live.empty()) {
            tasks.push_back({{occ.members().begin(), occ.members().end()}, live});
            return;
        }
        for (std::size_t t = 0; t < live.size(); ++t) {
            occ.add(cands_[live[t]]);
            offer(occ);
            split(occ, filter(occ, live, t + 1), tasks, depth - 1);
            occ.pop();
        }
    }

    void dfs(TraceOccupancy& occ, const std::vector<std::uint32_t>& live) {
        if (!tick()) return;
        offer(occ);
        for (std::size_t t = 0; t < live.size(); ++t) {
            if (stop_.load(std::memory_order_relaxed)) return;
            // Upper bound: everything still addable from here on.
            if (occ.size() + (live.size() - t) <= threshold()) return;
            if (threshold() >= ceiling_) return;
            occ.add(cands_[live[t]]);
            dfs(occ, filter(occ, live, t + 1));
            occ.pop();
        }
    }

public:
    std::uint64_t ceiling_ = ~std::uint64_t{0};

private:
    int n_;
    int k_;
    std::uint64_t required_;
    SearchBudget budget_;
    Clock::time_point start_;
    std::vector<std::uint64_t> cands_;

    std::uint64_t floor_ = 0;
    std::uint64_t stop_at_ = ~std::uint64_t{0};
    std::atomic<std::uint64_t> best_{0};
    std::vector<std::uint64_t> best_words_;
    std::mutex mu_;
    std::atomic<bool> stop_{false};
    std::atomic<bool> budget_hit_{false};
    std::atomic<std::uint64_t> nodes_{0};
    bool exhausted_ = false;
};

void check_params(int n, int d) {
    if (d < 1 || d + 1 > n || n > kMaxGroundSize) {
        throw UsageError("search needs 1 <= d and d+1 <= n <= 63, got n=" + std::to_string(n) +
                         " d=" + std::to_string(d));
    }
    if (d + 1 > TraceOccupancy::kMaxWidth) throw UsageError("search supports d <= 5");
}

UniformFamily to_family(int n, int k, const std::vector<std::uint64_t>& words) {
    std::vector<Subset> members;
    members.reserve(words.size());
    for (std::uint64_t w : words) members.emplace_back(n, w);
    return UniformFamily(n, k, std::move(members));
}

SearchResult finish(Engine& engine, SearchResult r, Clock::time_point start) {
    r.best = engine.best();
    r.witness = to_family(r.n, r.d + 1, engine.best_words());
    r.optimal = engine.exhausted();
    r.budget_exhausted = engine.budget_hit();
    r.nodes = engine.nodes();
    r.wall = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start);
    if (r.witness.size() != r.best) throw InvariantViolation("search witness size mismatch");
    if (!r.witness.empty() && vc_dimension(r.witness) > r.d) {
        throw InvariantViolation("search witness has VC dimension above d");
    }
    if (r.mode == SearchMode::kOrder && !has_order_certificates(r.witness, r.order)) {
        throw InvariantViolation("search witness lacks order-" + std::to_string(r.order) +
                                 " certificates");
    }
    return r;
}

}  // namespace

const char* to_string(SearchMode mode) {
    switch (mode) {
        case SearchMode::kExact: return "exact";
        case SearchMode::kWitness: return "witness";
        case SearchMode::kOrder: return "order-s";
    }
    return "?";
}

std::uint64_t bracket_lower(int n, int d) { return binomial(n - 1, d) + binomial(n - 4, d - 2); }

std::uint64_t bracket_upper(int n, int d) { return binomial(n, d) - 1; }

std::uint64_t default_witness_target(int n, int d) { return bracket_lower(n, d); }

bool has_order_certificates(const UniformFamily& fam, int s) {
    for (const Subset& f : fam) {
        const auto certs = certificates_of(f, fam);
        if (std::none_of(certs.begin(), certs.end(),
                         [s](const Subset& c) { return c.size() == s; })) {
            return false;
        }
    }
    return true;
}

SearchResult exact_max(int n, int d, const SearchBudget& budget) {
    check_params(n, d);
    const auto start = Clock::now();
    const int k = d + 1;
    Engine engine(n, k, TraceOccupancy::proper_subsets_mask(k), budget);
    engine.ceiling_ = binomial(n, d);
    engine.run();
    SearchResult r;
    r.mode = SearchMode::kExact;
    r.n = n;
    r.d = d;
    return finish(engine, r, start);
}

SearchResult lower_bound_witness(int n, int d, std::optional<std::uint64_t> target,
                                 const SearchBudget& budget) {
    check_params(n, d);
    const auto start = Clock::now();
    const int k = d + 1;
    const std::uint64_t goal = target.value_or(default_witness_target(n, d));
    const UniformFamily star = star_family(n, d);
    std::vector<std::uint64_t> star_words;
    for (const Subset& m : star) star_words.push_back(m.bits());

    Engine engine(n, k, TraceOccupancy::proper_subsets_mask(k), budget);
    engine.seed_incumbent(star_words);
    engine.ceiling_ = binomial(n, d);
    SearchResult r;
    r.mode = SearchMode::kWitness;
    r.n = n;
    r.d = d;
    r.target = goal;
    if (star.size() < goal) {
        engine.set_floor(goal - 1);
        engine.set_stop_at(goal);
        engine.run();
    }
    r = finish(engine, r, start);
    // The floor target-1 prunes more than the incumbent would, so an
    // exhausted tree only proves optimality when best reached that floor.
    // Below it, exhaustion proves the target unreachable.
    r.optimal = engine.exhausted() && star.size() < goal && r.best + 1 >= goal && r.best < goal;
    r.target_unreachable = engine.exhausted() && star.size() < goal && r.best < goal;
    return r;
}

SearchResult certificate_order_max(int n, int d, int s, const SearchBudget& budget) {
    check_params(n, d);
    if (s < 0 || s > d) throw UsageError("certificate order s must lie in [0, d]");
    const auto start = Clock::now();
    const int k = d + 1;
    Engine engine(n, k, TraceOccupancy::order_mask(k, s), budget);
    engine.ceiling_ = binomial(n, d);
    engine.run();
    SearchResult r;
    r.mode = SearchMode::kOrder;
    r.n = n;
    r.d = d;
    r.order = s;
    return finish(engine, r, start);
}

}  // namespace vcx
