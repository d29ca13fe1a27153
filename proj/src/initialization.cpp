#include "pbhfs/initialization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace pbhfs {

const std::array<InitStrategy, 10>& init_strategies() {
  static const std::array<InitStrategy, 10> all = [] {
    std::array<InitStrategy, 10> out{};
    const PlacementRule rules[] = {PlacementRule::mfbf, PlacementRule::mcbf, PlacementRule::mtbf,
                                   PlacementRule::mpbf, PlacementRule::mrbf};
    int k = 0;
    for (SequenceRule seq : {SequenceRule::random, SequenceRule::kmeans})
      for (PlacementRule rule : rules) out[k++] = {seq, rule};
    return out;
  }();
  return all;
}

const char* sequence_rule_name(SequenceRule rule) {
  return rule == SequenceRule::random ? "RANDOM" : "KMEANS";
}

const char* placement_rule_name(PlacementRule rule) {
  switch (rule) {
    case PlacementRule::mfbf: return "MFBF";
    case PlacementRule::mcbf: return "MCBF";
    case PlacementRule::mtbf: return "MTBF";
    case PlacementRule::mpbf: return "MPBF";
    case PlacementRule::mrbf: return "MRBF";
  }
  return "?";
}

namespace {

double norm(const std::vector<double>& x) {
  return std::sqrt(std::inner_product(x.begin(), x.end(), x.begin(), 0.0));
}

double distance2(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += (a[i] - b[i]) * (a[i] - b[i]);
  return d;
}

std::vector<int> kmeans_sequence(const Instance& in, Rng& rng) {
  const int n = in.jobs();
  std::vector<std::vector<double>> feat(n, std::vector<double>(in.stages(), 0.0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < in.stages(); ++j) {
      const auto ms = in.eligible_machines(i, j);
      for (int m : ms) feat[i][j] += in.proc_time(i, m);
      feat[i][j] /= static_cast<double>(ms.size());
    }

  const int k = kmeans_clusters(n);
  std::vector<int> by_norm(n);
  std::iota(by_norm.begin(), by_norm.end(), 0);
  std::stable_sort(by_norm.begin(), by_norm.end(), [&](int a, int b) { return norm(feat[a]) < norm(feat[b]); });
  std::vector<std::vector<double>> centroid;
  for (int c = 0; c < k; ++c) centroid.push_back(feat[by_norm[c * n / k]]);

  std::vector<int> label(n, -1);
  for (int iter = 0; iter < 100; ++iter) {
    bool changed = false;
    for (int i = 0; i < n; ++i) {
      int best = 0;
      for (int c = 1; c < k; ++c)
        if (distance2(feat[i], centroid[c]) < distance2(feat[i], centroid[best])) best = c;
      changed = changed || best != label[i];
      label[i] = best;
    }
    if (!changed) break;
    for (int c = 0; c < k; ++c) {
      std::vector<double> sum(in.stages(), 0.0);
      int count = 0;
      for (int i = 0; i < n; ++i)
        if (label[i] == c) {
          for (int j = 0; j < in.stages(); ++j) sum[j] += feat[i][j];
          ++count;
        }
      if (count == 0) continue;
      for (double& x : sum) x /= count;
      centroid[c] = std::move(sum);
    }
  }

  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return norm(centroid[a]) < norm(centroid[b]); });
  std::vector<int> seq;
  for (int c : order) {
    std::vector<int> members;
    for (int i = 0; i < n; ++i)
      if (label[i] == c) members.push_back(i);
    std::shuffle(members.begin(), members.end(), rng);
    seq.insert(seq.end(), members.begin(), members.end());
  }
  return seq;
}

struct OpenBatch {
  long start;
  long duration;
  int count;
};

} // namespace

std::vector<int> make_sequence(const Instance& in, SequenceRule rule, Rng& rng) {
  if (rule == SequenceRule::kmeans) return kmeans_sequence(in, rng);
  std::vector<int> seq(in.jobs());
  std::iota(seq.begin(), seq.end(), 0);
  std::shuffle(seq.begin(), seq.end(), rng);
  return seq;
}

Schedule place(const Instance& in, const std::vector<int>& sequence, PlacementRule rule, Rng& rng) {
  Schedule s = Schedule::empty(in);
  const double ep = in.power_load(), es = in.power_idle();
  std::vector<long> release(in.jobs(), 0);
  std::vector<int> order = sequence;

  for (int stage = 0; stage < in.stages(); ++stage) {
    if (stage > 0)
      std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return release[a] < release[b]; });
    std::vector<std::vector<OpenBatch>> open(in.machines());

    for (int job : order) {
      struct Option {
        int machine;
        bool join;
        long start, end;
        double energy;
      };
      std::vector<Option> options;
      for (int m : in.eligible_machines(job, stage)) {
        const long pt = in.proc_time(job, m);
        const auto& batches = s.machines[m];
        const long ready = open[m].empty() ? 0 : open[m].back().start + open[m].back().duration;
        if (batches.empty() || !can_join(in, m, batches.back(), job)) {
          const long start = std::max(ready, release[job]);
          options.push_back({m, false, start, start + pt,
                             static_cast<double>(pt) * ep + static_cast<double>(start - ready) * es});
        } else {
          const OpenBatch& b = open[m].back();
          const long start = std::max(b.start, release[job]);
          const long dur = std::max(b.duration, pt);
          const long load = dur * (b.count + 1) - b.duration * b.count;
          options.push_back({m, true, start, start + dur,
                             static_cast<double>(load) * ep + static_cast<double>(start - b.start) * es});
        }
      }

      std::size_t pick = 0;
      auto better = [&](auto key) {
        for (std::size_t k = 1; k < options.size(); ++k)
          if (key(options[k]) < key(options[pick])) pick = k;
      };
      switch (rule) {
        case PlacementRule::mfbf: better([](const Option& o) { return static_cast<double>(o.start); }); break;
        case PlacementRule::mcbf: better([](const Option& o) { return static_cast<double>(o.end); }); break;
        case PlacementRule::mtbf: better([](const Option& o) { return o.energy; }); break;
        case PlacementRule::mpbf:
          better([&](const Option& o) { return static_cast<double>(in.proc_time(job, o.machine)); });
          break;
        case PlacementRule::mrbf:
          pick = std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng);
          break;
      }

      const Option& o = options[pick];
      auto& batches = s.machines[o.machine];
      if (o.join) {
        batches.back().jobs.push_back(job);
        OpenBatch& b = open[o.machine].back();
        b.start = o.start;
        b.duration = o.end - o.start;
        ++b.count;
      } else {
        batches.push_back(Batch{{job}});
        open[o.machine].push_back({o.start, o.end - o.start, 1});
      }
    }

    for (int m = in.first_machine(stage); m < in.first_machine(stage + 1); ++m)
      for (std::size_t p = 0; p < s.machines[m].size(); ++p)
        for (int job : s.machines[m][p].jobs) release[job] = open[m][p].start + open[m][p].duration;
  }
  for (auto& batches : s.machines)
    for (auto& b : batches) std::sort(b.jobs.begin(), b.jobs.end());
  return s;
}

std::vector<Solution> init_population(const Instance& in, int popsize, Rng& rng, bool random_only) {
  std::vector<Solution> pop;
  pop.reserve(popsize);
  const auto& strategies = init_strategies();
  for (int k = 0; k < popsize; ++k) {
    const InitStrategy st = random_only ? InitStrategy{SequenceRule::random, PlacementRule::mrbf}
                                        : strategies[k % strategies.size()];
    const auto seq = make_sequence(in, st.sequence, rng);
    pop.push_back(evaluate(in, place(in, seq, st.placement, rng)));
  }
  return pop;
}

} // namespace pbhfs
