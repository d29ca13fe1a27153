#include "pbhfs/instance.hpp"

#include <cmath>
#include <fstream>
#include <random>

#include "pbhfs/error.hpp"

namespace pbhfs {

using nlohmann::json;

Instance::Instance(std::vector<bool> batch_stage,
                   std::vector<std::vector<int>> capacities,
                   std::vector<int> job_sizes,
                   const std::vector<std::vector<std::vector<int>>>& proc_time,
                   double power_load, double power_idle, Meta meta)
    : batch_stage_(std::move(batch_stage)),
      job_sizes_(std::move(job_sizes)),
      power_load_(power_load),
      power_idle_(power_idle),
      meta_(std::move(meta)) {
  if (capacities.size() != batch_stage_.size())
    throw ValidationError("machines", "expected one machine list per stage");
  for (std::size_t j = 0; j < capacities.size(); ++j) {
    if (capacities[j].empty())
      throw ValidationError("machines[" + std::to_string(j) + "]", "stage has no machines");
    for (int c : capacities[j]) {
      capacity_.push_back(c);
      machine_stage_.push_back(static_cast<int>(j));
    }
    stage_first_.push_back(static_cast<int>(capacity_.size()));
  }

  if (proc_time.size() != job_sizes_.size())
    throw ValidationError("proc_time", "expected one row per job");
  pt_.assign(job_sizes_.size() * capacity_.size(), 0);
  for (std::size_t i = 0; i < proc_time.size(); ++i) {
    const std::string row = "proc_time[" + std::to_string(i) + "]";
    if (proc_time[i].size() != batch_stage_.size())
      throw ValidationError(row, "expected one entry per stage");
    for (std::size_t j = 0; j < proc_time[i].size(); ++j) {
      if (static_cast<int>(proc_time[i][j].size()) != machines_at(static_cast<int>(j)))
        throw ValidationError(row + "[" + std::to_string(j) + "]",
                              "expected one entry per machine of the stage");
      for (std::size_t k = 0; k < proc_time[i][j].size(); ++k)
        pt_[i * capacity_.size() + first_machine(static_cast<int>(j)) + k] = proc_time[i][j][k];
    }
  }
  validate();
}

std::vector<int> Instance::eligible_machines(int job, int stage) const {
  std::vector<int> out;
  for (int m = first_machine(stage); m < first_machine(stage + 1); ++m)
    if (eligible(job, m)) out.push_back(m);
  return out;
}

void Instance::validate() const {
  if (jobs() < 1) throw ValidationError("n_jobs", "must be positive");
  if (stages() < 1) throw ValidationError("n_stages", "must be positive");
  for (int i = 0; i < jobs(); ++i)
    if (job_sizes_[i] <= 0)
      throw ValidationError("job_sizes[" + std::to_string(i) + "]", "must be positive");
  for (int m = 0; m < machines(); ++m)
    if (capacity_[m] <= 0)
      throw ValidationError("machines[" + std::to_string(stage_of(m)) + "][" +
                                std::to_string(local_index(m)) + "].capacity",
                            "must be positive");
  for (int i = 0; i < jobs(); ++i) {
    for (int j = 0; j < stages(); ++j) {
      const std::string cell = "proc_time[" + std::to_string(i) + "][" + std::to_string(j) + "]";
      bool any = false;
      for (int m = first_machine(j); m < first_machine(j + 1); ++m) {
        const int p = proc_time(i, m);
        if (p < 0) throw ValidationError(cell, "negative processing time");
        if (p == 0) continue;
        any = true;
        if (is_batch_stage(j) && job_sizes_[i] > capacity_[m])
          throw ValidationError("job_sizes[" + std::to_string(i) + "]",
                                "exceeds capacity " + std::to_string(capacity_[m]) +
                                    " of eligible batch machine " + std::to_string(local_index(m)) +
                                    " at stage " + std::to_string(j));
      }
      if (!any) throw ValidationError(cell, "no eligible machine");
    }
  }
  if (!std::isfinite(power_load_) || power_load_ < 0)
    throw ValidationError("power_load", "must be finite and nonnegative");
  if (!std::isfinite(power_idle_) || power_idle_ < 0)
    throw ValidationError("power_idle", "must be finite and nonnegative");
}

Instance generate_instance(const GeneratorParams& params) {
  if (params.jobs < 1) throw ParameterError("jobs must be >= 1");
  if (params.stages < 1) throw ParameterError("stages must be >= 1");
  if (params.max_machines_per_stage < 1) throw ParameterError("max machines per stage must be >= 1");
  if (!(params.batch_probability >= 0.0 && params.batch_probability <= 1.0))
    throw ParameterError("batch probability must lie in [0, 1]");

  std::mt19937_64 rng(params.seed);
  std::uniform_int_distribution<int> machine_count(1, params.max_machines_per_stage);
  std::uniform_int_distribution<int> capacity(10, 15);
  std::uniform_int_distribution<int> size(1, 10);
  std::uniform_int_distribution<int> time(1, 30);
  std::uniform_real_distribution<double> coin(0.0, 1.0);

  std::vector<bool> batch_stage(params.stages);
  std::vector<std::vector<int>> capacities(params.stages);
  for (int j = 0; j < params.stages; ++j) {
    batch_stage[j] = coin(rng) < params.batch_probability;
    capacities[j].resize(machine_count(rng));
    for (int& c : capacities[j]) c = capacity(rng);
  }
  std::vector<int> sizes(params.jobs);
  for (int& v : sizes) v = size(rng);
  std::vector<std::vector<std::vector<int>>> pt(params.jobs);
  for (auto& row : pt) {
    row.resize(params.stages);
    for (int j = 0; j < params.stages; ++j) {
      row[j].resize(capacities[j].size());
      for (int& p : row[j]) p = time(rng);
    }
  }
  return Instance(std::move(batch_stage), std::move(capacities), std::move(sizes), pt,
                  2.0, 1.0, {params.seed, kGeneratorVersion});
}

json to_json(const Instance& in) {
  json stage_types = json::array();
  json machines = json::array();
  for (int j = 0; j < in.stages(); ++j) {
    stage_types.push_back(in.is_batch_stage(j) ? 1 : 0);
    json list = json::array();
    for (int m = in.first_machine(j); m < in.first_machine(j + 1); ++m)
      list.push_back({{"capacity", in.capacity(m)}});
    machines.push_back(std::move(list));
  }
  json sizes = json::array();
  json pt = json::array();
  for (int i = 0; i < in.jobs(); ++i) {
    sizes.push_back(in.job_size(i));
    json row = json::array();
    for (int j = 0; j < in.stages(); ++j) {
      json cell = json::array();
      for (int m = in.first_machine(j); m < in.first_machine(j + 1); ++m)
        cell.push_back(in.proc_time(i, m));
      row.push_back(std::move(cell));
    }
    pt.push_back(std::move(row));
  }
  return json{{"n_jobs", in.jobs()},
              {"n_stages", in.stages()},
              {"stage_types", std::move(stage_types)},
              {"machines", std::move(machines)},
              {"job_sizes", std::move(sizes)},
              {"proc_time", std::move(pt)},
              {"power_load", in.power_load()},
              {"power_idle", in.power_idle()},
              {"meta", {{"seed", in.meta().seed}, {"generator_version", in.meta().generator_version}}}};
}

namespace {

const json& field(const json& doc, const char* name) {
  if (!doc.is_object() || !doc.contains(name)) throw ValidationError(name, "missing");
  return doc.at(name);
}

template <typename T>
T as(const json& value, const std::string& name) {
  if constexpr (std::is_integral_v<T>) {
    if (!value.is_number_integer()) throw ValidationError(name, "expected an integer");
  } else {
    if (!value.is_number()) throw ValidationError(name, "expected a number");
  }
  return value.get<T>();
}

const json& array(const json& value, const std::string& name) {
  if (!value.is_array()) throw ValidationError(name, "expected an array");
  return value;
}

} // namespace

Instance instance_from_json(const json& doc) {
  const int n = as<int>(field(doc, "n_jobs"), "n_jobs");
  const int s = as<int>(field(doc, "n_stages"), "n_stages");
  if (n < 1) throw ValidationError("n_jobs", "must be positive");
  if (s < 1) throw ValidationError("n_stages", "must be positive");

  const json& types = array(field(doc, "stage_types"), "stage_types");
  if (static_cast<int>(types.size()) != s) throw ValidationError("stage_types", "length differs from n_stages");
  std::vector<bool> batch(s);
  for (int j = 0; j < s; ++j) {
    const int t = as<int>(types[j], "stage_types[" + std::to_string(j) + "]");
    if (t != 0 && t != 1) throw ValidationError("stage_types[" + std::to_string(j) + "]", "must be 0 or 1");
    batch[j] = t == 1;
  }

  const json& machines = array(field(doc, "machines"), "machines");
  if (static_cast<int>(machines.size()) != s) throw ValidationError("machines", "length differs from n_stages");
  std::vector<std::vector<int>> caps(s);
  for (int j = 0; j < s; ++j) {
    const std::string name = "machines[" + std::to_string(j) + "]";
    for (std::size_t k = 0; k < array(machines[j], name).size(); ++k) {
      const std::string mname = name + "[" + std::to_string(k) + "]";
      caps[j].push_back(as<int>(field(machines[j][k], "capacity"), mname + ".capacity"));
    }
  }

  const json& sizes_doc = array(field(doc, "job_sizes"), "job_sizes");
  if (static_cast<int>(sizes_doc.size()) != n) throw ValidationError("job_sizes", "length differs from n_jobs");
  std::vector<int> sizes;
  for (int i = 0; i < n; ++i) sizes.push_back(as<int>(sizes_doc[i], "job_sizes[" + std::to_string(i) + "]"));

  const json& pt_doc = array(field(doc, "proc_time"), "proc_time");
  if (static_cast<int>(pt_doc.size()) != n) throw ValidationError("proc_time", "length differs from n_jobs");
  std::vector<std::vector<std::vector<int>>> pt(n);
  for (int i = 0; i < n; ++i) {
    const std::string row = "proc_time[" + std::to_string(i) + "]";
    for (std::size_t j = 0; j < array(pt_doc[i], row).size(); ++j) {
      const std::string cell = row + "[" + std::to_string(j) + "]";
      std::vector<int> times;
      for (std::size_t k = 0; k < array(pt_doc[i][j], cell).size(); ++k)
        times.push_back(as<int>(pt_doc[i][j][k], cell + "[" + std::to_string(k) + "]"));
      pt[i].push_back(std::move(times));
    }
  }

  Instance::Meta meta;
  if (doc.contains("meta")) {
    const json& m = doc.at("meta");
    if (m.contains("seed")) meta.seed = as<std::uint64_t>(m.at("seed"), "meta.seed");
    if (m.contains("generator_version")) {
      if (!m.at("generator_version").is_string())
        throw ValidationError("meta.generator_version", "expected a string");
      meta.generator_version = m.at("generator_version").get<std::string>();
    }
  }
  return Instance(std::move(batch), std::move(caps), std::move(sizes), pt,
                  as<double>(field(doc, "power_load"), "power_load"),
                  as<double>(field(doc, "power_idle"), "power_idle"), std::move(meta));
}

Instance read_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open instance file " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw ValidationError(path.string(), std::string("malformed document: ") + e.what());
  }
  return instance_from_json(doc);
}

void write_instance(const Instance& instance, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write instance file " + path.string());
  out << to_json(instance).dump(2) << '\n';
}

} // namespace pbhfs
