// Copyright 2026 The sepmeas Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sepmeas/scenario_io.hpp"

#include <fstream>
#include <utility>

#include "sepmeas/version.hpp"

namespace sepmeas {

namespace {

std::string idx(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

const Json& member(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) throw ScenarioParseError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ScenarioParseError(path + "." + key, "missing field");
  return *it;
}

const Json& as_array(const Json& j, const std::string& path) {
  if (!j.is_array()) throw ScenarioParseError(path, "expected an array");
  return j;
}

int as_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ScenarioParseError(path, "expected an integer");
  return j.get<int>();
}

std::uint64_t as_u64(const Json& j, const std::string& path) {
  if (!j.is_number_integer() && !j.is_number_unsigned())
    throw ScenarioParseError(path, "expected an integer");
  return j.get<std::uint64_t>();
}

double as_double(const Json& j, const std::string& path) {
  if (!j.is_number()) throw ScenarioParseError(path, "expected a number");
  return j.get<double>();
}

bool as_bool(const Json& j, const std::string& path) {
  if (!j.is_boolean()) throw ScenarioParseError(path, "expected a boolean");
  return j.get<bool>();
}

std::string as_string(const Json& j, const std::string& path) {
  if (!j.is_string()) throw ScenarioParseError(path, "expected a string");
  return j.get<std::string>();
}

std::vector<int> as_int_vector(const Json& j, const std::string& path) {
  const Json& arr = as_array(j, path);
  std::vector<int> out;
  out.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(as_int(arr[i], idx(path, i)));
  return out;
}

Json complex_to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j, const std::string& path) {
  const Json& arr = as_array(j, path);
  if (arr.size() != 2)
    throw ScenarioParseError(path, "expected a [real, imaginary] pair");
  return {as_double(arr[0], idx(path, 0)), as_double(arr[1], idx(path, 1))};
}

Json matrix_to_json(const CMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix matrix_from_json(const Json& j, int dim, const std::string& path) {
  const Json& rows = as_array(j, path);
  if (static_cast<int>(rows.size()) != dim)
    throw ScenarioParseError(path, "expected " + std::to_string(dim) + " rows");
  CMatrix m(dim, dim);
  for (int r = 0; r < dim; ++r) {
    const std::string rpath = idx(path, r);
    const Json& row = as_array(rows[r], rpath);
    if (static_cast<int>(row.size()) != dim)
      throw ScenarioParseError(rpath, "expected " + std::to_string(dim) + " entries");
    for (int c = 0; c < dim; ++c) m(r, c) = complex_from_json(row[c], idx(rpath, c));
  }
  return m;
}

Json label_to_json(const OutcomeLabel& label) {
  if (label.context.empty()) return label.outcome;
  Json j;
  j["context"] = label.context;
  j["outcome"] = label.outcome;
  return j;
}

OutcomeLabel label_from_json(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return OutcomeLabel{{}, j.get<int>()};
  OutcomeLabel label;
  label.context = as_int_vector(member(j, "context", path), path + ".context");
  label.outcome = as_int(member(j, "outcome", path), path + ".outcome");
  return label;
}

Json slack_map_to_json(const std::map<std::string, double>& m) {
  Json j = Json::object();
  for (const auto& [key, value] : m) j[key] = value;
  return j;
}

std::map<std::string, double> slack_map_from_json(const Json& j,
                                                  const std::string& path) {
  if (!j.is_object()) throw ScenarioParseError(path, "expected an object");
  std::map<std::string, double> out;
  for (auto it = j.begin(); it != j.end(); ++it)
    out[it.key()] = as_double(it.value(), path + "." + it.key());
  return out;
}

}  // namespace

Json scenario_to_json(const Scenario& s) {
  Json j;
  j["version"] = kScenarioFileVersion;
  Json subsystems = Json::array();
  for (const auto& ens : s.subsystems()) {
    Json sub;
    sub["dim"] = ens.dim();
    Json states = Json::array();
    for (const auto& st : ens.states()) states.push_back(matrix_to_json(st.matrix()));
    sub["states"] = std::move(states);
    sub["priors"] = ens.priors();
    subsystems.push_back(std::move(sub));
  }
  j["subsystems"] = std::move(subsystems);

  Json povm;
  povm["dim"] = s.joint_povm().dim();
  Json elements = Json::array();
  for (const auto& el : s.joint_povm().elements()) {
    Json e;
    e["label"] = label_to_json(el.label);
    e["matrix"] = matrix_to_json(el.matrix);
    elements.push_back(std::move(e));
  }
  povm["elements"] = std::move(elements);
  j["joint_povm"] = std::move(povm);
  return j;
}

Scenario scenario_from_json(const Json& j) {
  const std::string root = "scenario";
  const int version = as_int(member(j, "version", root), root + ".version");
  if (version != kScenarioFileVersion)
    throw ScenarioParseError(root + ".version",
                             "unsupported version " + std::to_string(version));

  const Json& subs = as_array(member(j, "subsystems", root), root + ".subsystems");
  if (subs.size() < 2)
    throw ScenarioParseError(root + ".subsystems", "need K >= 2 subsystems");

  std::vector<Ensemble> subsystems;
  for (std::size_t k = 0; k < subs.size(); ++k) {
    const std::string spath = idx(root + ".subsystems", k);
    const int dim = as_int(member(subs[k], "dim", spath), spath + ".dim");
    if (dim < 1) throw ScenarioParseError(spath + ".dim", "dimension must be >= 1");

    const Json& jstates = as_array(member(subs[k], "states", spath), spath + ".states");
    std::vector<DensityMatrix> states;
    for (std::size_t a = 0; a < jstates.size(); ++a) {
      const std::string mpath = idx(spath + ".states", a);
      try {
        states.emplace_back(matrix_from_json(jstates[a], dim, mpath));
      } catch (const ScenarioParseError&) {
        throw;
      } catch (const Error& e) {
        throw InvariantViolation(mpath, e.what());
      }
    }

    const Json& jpriors = as_array(member(subs[k], "priors", spath), spath + ".priors");
    std::vector<double> priors;
    for (std::size_t a = 0; a < jpriors.size(); ++a)
      priors.push_back(as_double(jpriors[a], idx(spath + ".priors", a)));

    try {
      subsystems.emplace_back(std::move(states), std::move(priors));
    } catch (const Error& e) {
      throw InvariantViolation(spath, e.what());
    }
  }

  const std::string ppath = root + ".joint_povm";
  const Json& jpovm = member(j, "joint_povm", root);
  const int dim = as_int(member(jpovm, "dim", ppath), ppath + ".dim");
  const Json& jels = as_array(member(jpovm, "elements", ppath), ppath + ".elements");
  if (jels.empty()) throw ScenarioParseError(ppath + ".elements", "no elements");

  std::vector<PovmElement> elements;
  for (std::size_t b = 0; b < jels.size(); ++b) {
    const std::string epath = idx(ppath + ".elements", b);
    OutcomeLabel label = label_from_json(member(jels[b], "label", epath), epath + ".label");
    CMatrix m = matrix_from_json(member(jels[b], "matrix", epath), dim, epath + ".matrix");
    elements.push_back({std::move(label), std::move(m)});
  }

  try {
    Povm joint(dim, std::move(elements));
    return Scenario(std::move(subsystems), std::move(joint));
  } catch (const Error& e) {
    throw InvariantViolation(ppath, e.what());
  }
}

Scenario read_scenario_file(const std::string& path) {
  return scenario_from_json(read_json_file(path));
}

Json effective_povm_to_json(const EffectivePovm& e) {
  const PovmValidation v = validate_povm(e.povm);
  Json j;
  j["version"] = kScenarioFileVersion;
  j["subsystem"] = e.subsystem + 1;  // subsystems are numbered 1..K externally
  j["method"] = e.method == Method::construction1 ? 1 : 2;
  j["dim"] = e.povm.dim();
  if (e.chosen_context) j["chosen_context"] = *e.chosen_context;
  j["completeness_residual"] = v.completeness_residual;
  Json elements = Json::array();
  for (const auto& el : e.povm.elements()) {
    Json je;
    je["label"] = label_to_json(el.label);
    je["matrix"] = matrix_to_json(el.matrix);
    elements.push_back(std::move(je));
  }
  j["elements"] = std::move(elements);
  return j;
}

Json config_to_json(const GenConfig& cfg, int trials) {
  Json j;
  j["seed"] = cfg.seed;
  j["dims"] = cfg.dims;
  j["states_per_subsystem"] = cfg.states_per_subsystem;
  j["povm_outcomes"] = cfg.povm_outcomes;
  j["state_rank"] = cfg.state_rank == StateRank::pure ? "pure" : "full";
  j["prior_mode"] = cfg.prior_mode == PriorMode::uniform ? "uniform" : "random";
  j["trials"] = trials;
  return j;
}

GenConfig config_from_json(const Json& j, int* trials) {
  const std::string root = "config";
  GenConfig cfg;
  cfg.seed = as_u64(member(j, "seed", root), root + ".seed");
  cfg.dims = as_int_vector(member(j, "dims", root), root + ".dims");
  cfg.states_per_subsystem = as_int_vector(member(j, "states_per_subsystem", root),
                                           root + ".states_per_subsystem");
  cfg.povm_outcomes = as_int(member(j, "povm_outcomes", root), root + ".povm_outcomes");

  const std::string rank = as_string(member(j, "state_rank", root), root + ".state_rank");
  if (rank == "pure")
    cfg.state_rank = StateRank::pure;
  else if (rank == "full")
    cfg.state_rank = StateRank::full;
  else
    throw ScenarioParseError(root + ".state_rank", "expected \"full\" or \"pure\"");

  const std::string mode = as_string(member(j, "prior_mode", root), root + ".prior_mode");
  if (mode == "uniform")
    cfg.prior_mode = PriorMode::uniform;
  else if (mode == "random")
    cfg.prior_mode = PriorMode::random;
  else
    throw ScenarioParseError(root + ".prior_mode", "expected \"uniform\" or \"random\"");

  if (trials) *trials = as_int(member(j, "trials", root), root + ".trials");
  return cfg;
}

Json trial_to_json(const TrialResult& t) {
  Json j;
  j["scenario_seed"] = t.scenario_seed;
  j["num_subsystems"] = t.num_subsystems;
  j["I_joint"] = t.I_joint;
  j["I_c1"] = t.I_c1;
  j["I_c2"] = t.I_c2;
  j["chosen_contexts"] = t.chosen_contexts;
  j["identity_residuals"] = slack_map_to_json(t.identity_residuals);
  j["slacks"] = slack_map_to_json(t.slacks);
  j["c2_tuple_extension"] = t.c2_tuple_extension;
  j["violations"] = t.violations;
  return j;
}

TrialResult trial_from_json(const Json& j) {
  const std::string root = "trial";
  TrialResult t;
  t.scenario_seed = as_u64(member(j, "scenario_seed", root), root + ".scenario_seed");
  t.num_subsystems = as_int(member(j, "num_subsystems", root), root + ".num_subsystems");
  t.I_joint = as_double(member(j, "I_joint", root), root + ".I_joint");

  const Json& c1 = as_array(member(j, "I_c1", root), root + ".I_c1");
  for (std::size_t i = 0; i < c1.size(); ++i)
    t.I_c1.push_back(as_double(c1[i], idx(root + ".I_c1", i)));
  const Json& c2 = as_array(member(j, "I_c2", root), root + ".I_c2");
  for (std::size_t i = 0; i < c2.size(); ++i)
    t.I_c2.push_back(as_double(c2[i], idx(root + ".I_c2", i)));

  const Json& ctx = as_array(member(j, "chosen_contexts", root), root + ".chosen_contexts");
  for (std::size_t i = 0; i < ctx.size(); ++i)
    t.chosen_contexts.push_back(as_int_vector(ctx[i], idx(root + ".chosen_contexts", i)));

  t.identity_residuals = slack_map_from_json(member(j, "identity_residuals", root),
                                             root + ".identity_residuals");
  t.slacks = slack_map_from_json(member(j, "slacks", root), root + ".slacks");
  t.c2_tuple_extension =
      as_bool(member(j, "c2_tuple_extension", root), root + ".c2_tuple_extension");

  const Json& viol = as_array(member(j, "violations", root), root + ".violations");
  for (std::size_t i = 0; i < viol.size(); ++i)
    t.violations.push_back(as_string(viol[i], idx(root + ".violations", i)));
  return t;
}

Json report_to_json(const VerificationReport& r, const GenConfig& cfg, int trials) {
  Json j;
  j["tool"] = kToolName;
  j["tool_version"] = kVersion;
  j["config"] = config_to_json(cfg, trials);
  j["trials"] = r.trials;
  j["passed"] = r.passed();
  Json failures = Json::array();
  for (const auto& f : r.failures) failures.push_back(trial_to_json(f));
  j["failures"] = std::move(failures);
  j["min_slacks"] = slack_map_to_json(r.min_slacks);
  j["max_residuals"] = slack_map_to_json(r.max_residuals);
  Json hist;
  hist["edges"] = GapHistogram::kEdges;
  hist["counts"] = r.gap_histogram.counts;
  j["gap_histogram"] = std::move(hist);
  j["strict_gap_count"] = r.strict_gap_count();
  j["construction2_tuple_extension"] = r.construction2_tuple_extension;
  return j;
}

ParsedReport report_from_json(const Json& j) {
  const std::string root = "report";
  ParsedReport out;
  out.config = config_from_json(member(j, "config", root), &out.trials_requested);
  out.report.trials = as_u64(member(j, "trials", root), root + ".trials");

  const Json& failures = as_array(member(j, "failures", root), root + ".failures");
  for (const auto& f : failures) out.report.failures.push_back(trial_from_json(f));

  out.report.min_slacks =
      slack_map_from_json(member(j, "min_slacks", root), root + ".min_slacks");
  out.report.max_residuals =
      slack_map_from_json(member(j, "max_residuals", root), root + ".max_residuals");

  const std::string hpath = root + ".gap_histogram";
  const Json& hist = member(j, "gap_histogram", root);
  const Json& counts = as_array(member(hist, "counts", hpath), hpath + ".counts");
  if (counts.size() != out.report.gap_histogram.counts.size())
    throw ScenarioParseError(hpath + ".counts", "unexpected bin count");
  for (std::size_t i = 0; i < counts.size(); ++i)
    out.report.gap_histogram.counts[i] = as_u64(counts[i], idx(hpath + ".counts", i));

  out.report.construction2_tuple_extension =
      as_bool(member(j, "construction2_tuple_extension", root),
              root + ".construction2_tuple_extension");
  return out;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ScenarioParseError(path, "cannot open file");
  Json j;
  try {
    in >> j;
  } catch (const Json::parse_error& e) {
    throw ScenarioParseError(path, e.what());
  }
  return j;
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path + " for writing");
  out << j.dump(2) << "\n";
  if (!out) throw Error("failed writing " + path);
}

}  // namespace sepmeas
