#include "tqd/ontic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

#include "tqd/random.hpp"

namespace tqd {

std::size_t OnticModel::joint_points() const {
  std::size_t n = 1;
  for (const auto& p : parties) n *= p.points.size();
  return n;
}

std::vector<std::size_t> OnticModel::overlap_region(std::size_t party) const {
  const auto& p = parties.at(party);
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < p.points.size(); ++k)
    if (p.states[0].probabilities[k] > 0.0 && p.states[1].probabilities[k] > 0.0) out.push_back(k);
  return out;
}

double OnticModel::overlap_mass(std::size_t party) const {
  const auto& p = parties.at(party);
  std::array<double, 2> mass{};
  for (auto k : overlap_region(party))
    for (std::size_t s = 0; s < 2; ++s) mass[s] += p.states[s].probabilities[k];
  return std::min(mass[0], mass[1]);
}

double OnticModel::overlap_weight(std::size_t party) const {
  const auto& p = parties.at(party);
  double w = 0.0;
  for (std::size_t k = 0; k < p.points.size(); ++k)
    w += std::min(p.states[0].probabilities[k], p.states[1].probabilities[k]);
  return w;
}

namespace {

void check_distribution(std::span<const double> probs, const std::string& what) {
  double sum = 0.0;
  for (double v : probs) {
    if (!std::isfinite(v) || v < 0.0) throw std::invalid_argument(what + ": negative or non-finite entry");
    sum += v;
  }
  if (std::abs(sum - 1.0) > kDistributionTol) {
    std::ostringstream os;
    os << what << ": probabilities sum to " << sum;
    throw std::invalid_argument(os.str());
  }
}

// Per-party point indices of a joint point, party 0 most significant.
std::vector<std::size_t> split_joint(const OnticModel& m, std::size_t joint) {
  std::vector<std::size_t> idx(m.parties.size());
  for (std::size_t p = m.parties.size(); p-- > 0;) {
    const std::size_t r = m.parties[p].points.size();
    idx[p] = joint % r;
    joint /= r;
  }
  return idx;
}

std::size_t state_choice(const OnticModel& m, std::size_t prep0, std::size_t party) {
  return (prep0 >> (m.parties.size() - 1 - party)) & 1;
}

std::size_t checked_preparation(const OnticModel& m, std::size_t preparation) {
  if (preparation < 1 || preparation > m.preparations()) {
    throw std::out_of_range("preparation index " + std::to_string(preparation) + " outside 1.." +
                            std::to_string(m.preparations()));
  }
  return preparation - 1;
}

std::array<std::string, 2> three_party_labels(std::size_t party) {
  static const std::array<std::array<std::string, 2>, 3> labels{
      {{"m", "n"}, {"m", "nbar"}, {"mbar", "nbar"}}};
  return labels.at(party);
}

const char* party_name(std::size_t p) {
  static const char* names[] = {"A", "B", "C", "D", "E", "F", "G", "H", "I", "J"};
  return names[p];
}

}  // namespace

void validate(const OnticModel& model) {
  if (model.parties.empty()) throw std::invalid_argument("ontic model has no parties");
  if (model.parties.size() > 10) throw std::invalid_argument("ontic model has more than 10 parties");
  for (const auto& p : model.parties) {
    if (p.points.empty()) throw std::invalid_argument("party " + p.name + " has an empty ontic space");
    for (const auto& s : p.states) {
      if (s.probabilities.size() != p.points.size()) {
        throw std::invalid_argument("party " + p.name + ", state " + s.label + ": wrong distribution length");
      }
      check_distribution(s.probabilities, "party " + p.name + ", state " + s.label);
    }
  }
  if (model.response.rows != model.joint_points()) {
    throw std::invalid_argument("response table has " + std::to_string(model.response.rows) + " rows, expected " +
                                std::to_string(model.joint_points()));
  }
  if (model.response.cols == 0) throw std::invalid_argument("response table has no outcomes");
  for (std::size_t r = 0; r < model.response.rows; ++r) {
    check_distribution(std::span<const double>(&model.response.data[r * model.response.cols], model.response.cols),
                       "response row " + std::to_string(r));
  }
}

OnticModel build_psi_ontic_model(const Table<double>& quantum,
                                 const std::vector<std::array<std::string, 2>>& state_labels) {
  const std::size_t parties = state_labels.size();
  if (quantum.rows != (std::size_t{1} << parties)) {
    throw std::invalid_argument("psi-ontic model: quantum table rows must be 2^parties");
  }
  OnticModel m;
  for (std::size_t p = 0; p < parties; ++p) {
    const auto& [first, second] = state_labels[p];
    m.parties.push_back({party_name(p),
                         {"lambda_" + first, "lambda_" + second},
                         {EpistemicState{first, {1.0, 0.0}}, EpistemicState{second, {0.0, 1.0}}}});
  }
  // Joint point index coincides with preparation index.
  m.response = quantum;
  validate(m);
  return m;
}

OnticModel build_psi_ontic_model(const PreparationFamily& family, const MeasurementBasis& basis) {
  return build_psi_ontic_model(probability_table(family, basis),
                               {three_party_labels(0), three_party_labels(1), three_party_labels(2)});
}

OnticModel build_overlap_toy_model(double q, std::size_t parties) {
  if (!(q > 0.0 && q <= 1.0)) {
    std::ostringstream os;
    os << "overlap mass q = " << q << " outside (0, 1]";
    throw std::domain_error(os.str());
  }
  if (parties < 1 || parties > 10) throw std::invalid_argument("toy model: 1..10 parties");
  OnticModel m;
  for (std::size_t p = 0; p < parties; ++p) {
    const auto labels =
        parties == 3 ? three_party_labels(p) : std::array<std::string, 2>{"psi0", "psi1"};
    m.parties.push_back({party_name(p),
                         {"only_" + labels[0], "shared", "only_" + labels[1]},
                         {EpistemicState{labels[0], {1.0 - q, q, 0.0}},
                          EpistemicState{labels[1], {0.0, q, 1.0 - q}}}});
  }
  const std::size_t outcomes = m.preparations();
  m.response = Table<double>(m.joint_points(), outcomes);
  std::fill(m.response.data.begin(), m.response.data.end(), 1.0 / static_cast<double>(outcomes));
  validate(m);
  return m;
}

OnticModel with_random_response(OnticModel model, std::uint64_t seed) {
  Rng rng(seed, {0x7265737000ULL});
  for (std::size_t r = 0; r < model.response.rows; ++r) {
    double sum = 0.0;
    for (std::size_t c = 0; c < model.response.cols; ++c) {
      const double e = -std::log(rng.uniform());
      model.response(r, c) = e;
      sum += e;
    }
    for (std::size_t c = 0; c < model.response.cols; ++c) model.response(r, c) /= sum;
  }
  validate(model);
  return model;
}

std::vector<double> model_prediction(const OnticModel& model, std::size_t preparation) {
  const std::size_t prep0 = checked_preparation(model, preparation);
  std::vector<double> out(model.outcomes(), 0.0);
  const std::size_t joints = model.joint_points();
  for (std::size_t j = 0; j < joints; ++j) {
    const auto idx = split_joint(model, j);
    double w = 1.0;
    for (std::size_t p = 0; p < model.parties.size() && w != 0.0; ++p)
      w *= model.parties[p].states[state_choice(model, prep0, p)].probabilities[idx[p]];
    if (w == 0.0) continue;
    for (std::size_t o = 0; o < out.size(); ++o) out[o] += w * model.response(j, o);
  }
  return out;
}

double pigeonhole_bound(const OnticModel& model) {
  double w = 1.0;
  for (std::size_t p = 0; p < model.parties.size(); ++p) w *= model.overlap_weight(p);
  return w / static_cast<double>(model.outcomes());
}

double forbidden_outcome_bound(const OnticModel& model, const ExclusionMatching& matching) {
  if (matching.outcome_to_preparation.size() != model.outcomes()) {
    throw std::invalid_argument("forbidden_outcome_bound: matching size differs from outcome count");
  }
  double worst = 0.0;
  for (std::size_t o = 0; o < model.outcomes(); ++o) {
    const auto row = model_prediction(model, matching.outcome_to_preparation[o] + 1);
    worst = std::max(worst, row[o]);
  }
  return worst;
}

ConsistencyReport consistency_check(const OnticModel& model, const Table<double>& quantum,
                                    const ExclusionMatching& matching, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("consistency_check: eps must be positive");
  if (quantum.rows != model.preparations() || quantum.cols != model.outcomes()) {
    throw std::invalid_argument("consistency_check: quantum table shape differs from the model");
  }
  ConsistencyReport report{0.0, {}, eps};
  for (std::size_t j = 0; j < model.preparations(); ++j) {
    const auto row = model_prediction(model, j + 1);
    for (std::size_t o = 0; o < row.size(); ++o)
      report.max_deviation = std::max(report.max_deviation, std::abs(row[o] - quantum(j, o)));
  }
  for (std::size_t o = 0; o < model.outcomes(); ++o) {
    const std::size_t j = matching.outcome_to_preparation.at(o);
    const double p = model_prediction(model, j + 1)[o];
    if (p > eps) report.violations.push_back({j + 1, o + 1, p});
  }
  return report;
}

ConsistencyReport consistency_check(const OnticModel& model, const PreparationFamily& family,
                                    const MeasurementBasis& basis, double eps) {
  return consistency_check(model, probability_table(family, basis), find_exclusion_matching(family, basis), eps);
}

MonteCarloResult monte_carlo_run(const OnticModel& model, std::size_t preparation, std::uint64_t samples,
                                 std::uint64_t seed, unsigned workers) {
  if (samples < 1) throw std::invalid_argument("monte_carlo_run: samples must be >= 1");
  const std::size_t prep0 = checked_preparation(model, preparation);
  const std::size_t n_parties = model.parties.size();
  const std::uint64_t blocks = (samples + kMonteCarloBlock - 1) / kMonteCarloBlock;
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(blocks)));

  std::vector<std::span<const double>> mus;
  for (std::size_t p = 0; p < n_parties; ++p)
    mus.emplace_back(model.parties[p].states[state_choice(model, prep0, p)].probabilities);

  auto run_blocks = [&](unsigned worker, std::vector<std::uint64_t>& counts) {
    for (std::uint64_t b = worker; b < blocks; b += workers) {
      Rng rng(seed, {static_cast<std::uint64_t>(preparation), b});
      const std::uint64_t n = std::min<std::uint64_t>(kMonteCarloBlock, samples - b * kMonteCarloBlock);
      for (std::uint64_t s = 0; s < n; ++s) {
        std::size_t joint = 0;
        for (std::size_t p = 0; p < n_parties; ++p)
          joint = joint * model.parties[p].points.size() + rng.categorical(mus[p]);
        const std::span<const double> row(&model.response.data[joint * model.response.cols], model.response.cols);
        ++counts[rng.categorical(row)];
      }
    }
  };

  std::vector<std::vector<std::uint64_t>> per_worker(workers, std::vector<std::uint64_t>(model.outcomes(), 0));
  if (workers == 1) {
    run_blocks(0, per_worker[0]);
  } else {
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < workers; ++w) threads.emplace_back(run_blocks, w, std::ref(per_worker[w]));
    for (auto& t : threads) t.join();
  }

  MonteCarloResult result{preparation, samples, std::vector<std::uint64_t>(model.outcomes(), 0), {}};
  for (const auto& c : per_worker)
    for (std::size_t o = 0; o < c.size(); ++o) result.counts[o] += c[o];
  for (auto c : result.counts) result.frequencies.push_back(static_cast<double>(c) / static_cast<double>(samples));
  return result;
}

}  // namespace tqd
