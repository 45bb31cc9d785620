#include "fou/harness.hpp"

#include <atomic>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "fou/asymptotics.hpp"
#include "fou/errors.hpp"
#include "fou/rng.hpp"

namespace fou {
namespace {

using json = nlohmann::json;

constexpr std::uint64_t kTagReplication = 0x7265706c;  // per-replication fBm stream

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

/// Accepts plain decimals and the "2^-8" shorthand.
double parse_real(const std::string& s) {
  if (s.rfind("2^", 0) == 0) return std::exp2(std::stod(s.substr(2)));
  return std::stod(s);
}

BasisFunction parse_basis_token(const std::string& tok) {
  if (tok == "constant" || tok == "const" || tok == "1") return BasisFunction::constant();
  const auto colon = tok.find(':');
  const std::string kind = colon == std::string::npos ? tok : tok.substr(0, colon);
  const int k = colon == std::string::npos ? 1 : std::stoi(tok.substr(colon + 1));
  if (kind == "cos") return BasisFunction::cosine(k);
  if (kind == "sin") return BasisFunction::sine(k);
  throw DomainError("unknown basis kind: " + tok);
}

}  // namespace

void ExperimentSpec::validate() const {
  if (alpha <= 0.0) throw DomainError("alpha must be positive");
  if (horizons.empty()) throw DomainError("at least one horizon required");
  for (int n : horizons) {
    if (n < 2) throw DomainError("horizons must be integers >= 2");
    if (alpha * n > 40.0) throw DomainError("alpha * n exceeds the overflow guard");
  }
  if (replications < 1) throw DomainError("replications must be >= 1");
  if (dt <= 0.0) throw DomainError("dt must be positive");
}

ExperimentSpec parse_config_text(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::string section;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    if (line.front() == '[' && line.back() == ']') {
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw DomainError("config parse error at line " + std::to_string(lineno) +
                        ": expected key = value");
    kv[section + "." + trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }

  auto require = [&kv](const std::string& key) {
    auto it = kv.find(key);
    if (it == kv.end()) throw DomainError("config missing key: " + key);
    return it->second;
  };
  auto get = [&kv](const std::string& key, const std::string& dflt) {
    auto it = kv.find(key);
    return it == kv.end() ? dflt : it->second;
  };

  std::vector<BasisFunction> basis;
  for (const auto& tok : split_csv(require("model.basis")))
    basis.push_back(parse_basis_token(tok));
  const auto mu_toks = split_csv(require("model.mu"));
  Eigen::VectorXd mu(static_cast<Eigen::Index>(mu_toks.size()));
  for (std::size_t i = 0; i < mu_toks.size(); ++i)
    mu(static_cast<Eigen::Index>(i)) = parse_real(mu_toks[i]);

  ExperimentSpec spec{PeriodicDrift(std::move(basis), std::move(mu)),
                      parse_real(require("model.alpha")),
                      HurstParam(parse_real(require("model.H")))};
  spec.dt = parse_real(get("grid.dt", "2^-8"));
  for (const auto& tok : split_csv(require("grid.horizons")))
    spec.horizons.push_back(std::stoi(tok));
  spec.replications = std::stoi(get("mc.replications", "1"));
  spec.base_seed = std::stoull(get("mc.base_seed", "0"));
  spec.zero_noise = get("mc.zero_noise", "false") == "true";
  spec.limit_draws = std::stoll(get("limits.draws", "2000"));
  spec.output_dir = get("output.directory", "out");
  spec.validate();
  return spec;
}

ExperimentSpec parse_config(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw DomainError("cannot open config file: " + file.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

namespace {

ReplicationResult run_one_replication(const ExperimentSpec& spec, int rep) {
  const int n_max = *std::max_element(spec.horizons.begin(), spec.horizons.end());
  const auto m = static_cast<Eigen::Index>(std::llround(n_max / spec.dt));
  const std::uint64_t seed =
      RngStream::derive(spec.base_seed, kTagReplication, static_cast<std::uint64_t>(rep))
          .key();

  const FbmPath bh = spec.zero_noise
                         ? FbmPath{spec.H, spec.dt, Eigen::VectorXd::Zero(m + 1), seed}
                         : generate_fbm_path(spec.H, m, spec.dt, seed);
  ProcessPath path = simulate_exact(spec.drift, spec.alpha, bh);

  ReplicationResult out{rep, seed};
  for (int n : spec.horizons) {
    EstimatorOutput est = estimate(path, spec.H, n);
    HorizonRecord rec{n, est.alpha_hat, est.mu_hat, est.stats.gamma_inv, 0.0, {}};
    rec.err_alpha_scaled = std::exp(spec.alpha * n) * (est.alpha_hat - spec.alpha);
    rec.err_mu_scaled =
        std::pow(static_cast<double>(n), 1.0 - spec.H.H) * (est.mu_hat - spec.drift.mu);
    out.records.push_back(std::move(rec));
  }
  return out;
}

}  // namespace

McRunResult run_mc(const ExperimentSpec& spec, int threads) {
  spec.validate();
  if (threads < 1) threads = 1;

  McRunResult result;
  result.replications.resize(spec.replications);
  std::atomic<int> next{0};
  std::atomic<int> degenerate{0};

  auto worker = [&] {
    for (;;) {
      const int rep = next.fetch_add(1);
      if (rep >= spec.replications) return;
      try {
        result.replications[rep] = run_one_replication(spec, rep);
      } catch (const DegenerateDesign&) {
        result.replications[rep] = ReplicationResult{rep, 0, true, {}};
        degenerate.fetch_add(1);
      }
    }
  };

  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  result.degenerate_count = degenerate.load();
  result.skip_warning = result.degenerate_count * 20 > spec.replications;
  return result;
}

void write_results_csv(const ExperimentSpec& spec, const McRunResult& result,
                       const std::filesystem::path& file) {
  std::ofstream out(file);
  if (!out) throw std::runtime_error("cannot open " + file.string());
  const int p = spec.drift.p();
  out << "rep,seed,n,alpha_hat";
  for (int i = 1; i <= p; ++i) out << ",mu_hat_" << i;
  out << ",gamma_inv,err_alpha_scaled";
  for (int i = 1; i <= p; ++i) out << ",err_mu_scaled_" << i;
  out << '\n';
  out.precision(17);
  for (const auto& rep : result.replications) {
    if (rep.degenerate) continue;
    for (const auto& rec : rep.records) {
      out << rep.rep << ',' << rep.seed << ',' << rec.n << ',' << rec.alpha_hat;
      for (int i = 0; i < p; ++i) out << ',' << rec.mu_hat(i);
      out << ',' << rec.gamma_inv << ',' << rec.err_alpha_scaled;
      for (int i = 0; i < p; ++i) out << ',' << rec.err_mu_scaled(i);
      out << '\n';
    }
  }
}

McRunResult read_results_csv(const ExperimentSpec& spec,
                             const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open " + file.string());
  const int p = spec.drift.p();
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error(file.string() + ":1: empty results file");

  std::map<int, ReplicationResult> by_rep;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto cells = split_csv(line);
    if (cells.size() != static_cast<std::size_t>(6 + 2 * p))
      throw std::runtime_error(file.string() + ":" + std::to_string(lineno) +
                               ": malformed record");
    try {
      const int rep = std::stoi(cells[0]);
      auto& r = by_rep[rep];
      r.rep = rep;
      r.seed = std::stoull(cells[1]);
      HorizonRecord rec;
      rec.n = std::stoi(cells[2]);
      rec.alpha_hat = std::stod(cells[3]);
      rec.mu_hat.resize(p);
      for (int i = 0; i < p; ++i) rec.mu_hat(i) = std::stod(cells[4 + i]);
      rec.gamma_inv = std::stod(cells[4 + p]);
      rec.err_alpha_scaled = std::stod(cells[5 + p]);
      rec.err_mu_scaled.resize(p);
      for (int i = 0; i < p; ++i) rec.err_mu_scaled(i) = std::stod(cells[6 + p + i]);
      r.records.push_back(std::move(rec));
    } catch (const std::exception&) {
      throw std::runtime_error(file.string() + ":" + std::to_string(lineno) +
                               ": parse error");
    }
  }
  McRunResult result;
  for (auto& [rep, r] : by_rep) result.replications.push_back(std::move(r));
  return result;
}

void write_summary_json(const ExperimentSpec& spec, const McRunResult& result,
                        const std::filesystem::path& file) {
  json j;
  j["alpha"] = spec.alpha;
  j["H"] = spec.H.H;
  j["dt"] = spec.dt;
  j["replications"] = spec.replications;
  j["base_seed"] = spec.base_seed;
  j["degenerate_count"] = result.degenerate_count;
  j["skip_warning"] = result.skip_warning;

  json horizons = json::array();
  for (std::size_t hi = 0; hi < spec.horizons.size(); ++hi) {
    std::vector<double> abs_a, max_mu;
    for (const auto& rep : result.replications) {
      if (rep.degenerate || hi >= rep.records.size()) continue;
      const auto& rec = rep.records[hi];
      abs_a.push_back(std::abs(rec.alpha_hat - spec.alpha));
      max_mu.push_back((rec.mu_hat - spec.drift.mu).cwiseAbs().maxCoeff());
    }
    json h;
    h["n"] = spec.horizons[hi];
    h["count"] = abs_a.size();
    if (!abs_a.empty()) {
      h["median_abs_alpha_err"] =
          median(Eigen::Map<Eigen::VectorXd>(abs_a.data(), abs_a.size()));
      h["median_max_mu_err"] =
          median(Eigen::Map<Eigen::VectorXd>(max_mu.data(), max_mu.size()));
    }
    horizons.push_back(std::move(h));
  }
  j["horizons"] = std::move(horizons);

  std::ofstream out(file);
  if (!out) throw std::runtime_error("cannot open " + file.string());
  out << j.dump(2) << '\n';
}

LimitTestReport run_limit_tests(const ExperimentSpec& spec, const McRunResult& result,
                                std::uint64_t limit_seed) {
  const int n_max = *std::max_element(spec.horizons.begin(), spec.horizons.end());
  std::vector<double> a_err, mu_err;
  for (const auto& rep : result.replications) {
    if (rep.degenerate) continue;
    for (const auto& rec : rep.records) {
      if (rec.n != n_max) continue;
      a_err.push_back(rec.err_alpha_scaled);
      mu_err.push_back(rec.err_mu_scaled(0));
    }
  }
  if (a_err.size() < 30)
    throw DomainError("limit tests need a completed mc run with >= 30 replications");

  LimitTestReport report;
  AlphaLimitLaw law(spec.drift, spec.alpha, spec.H);
  report.sigma2 = law.sigma2;
  report.A_inf = law.A_inf;
  Eigen::VectorXd limit_draws = sample_alpha_limit(law, spec.limit_draws, limit_seed);

  Eigen::Map<Eigen::VectorXd> emp_a(a_err.data(), static_cast<Eigen::Index>(a_err.size()));
  Eigen::Map<Eigen::VectorXd> emp_mu(mu_err.data(),
                                     static_cast<Eigen::Index>(mu_err.size()));
  report.alpha_ks = ks_two_sample(emp_a, limit_draws);

  const double d11 = d_matrix(spec.drift.basis)(0, 0);
  if (d11 > 1e-12) {
    report.mu_ks = ks_one_sample_normal(emp_mu, 0.0, std::sqrt(d11));
  } else {
    // degenerate component: the scaled error must shrink with the horizon
    if (spec.horizons.size() >= 2) {
      std::vector<double> first, last;
      for (const auto& rep : result.replications) {
        if (rep.degenerate || rep.records.size() < 2) continue;
        first.push_back(std::abs(rep.records.front().err_mu_scaled(0)));
        last.push_back(std::abs(rep.records.back().err_mu_scaled(0)));
      }
      report.mu_shrinkage_ok =
          median(Eigen::Map<Eigen::VectorXd>(last.data(), last.size())) <
          median(Eigen::Map<Eigen::VectorXd>(first.data(), first.size()));
    }
  }

  // joint-independence smoke test: sample correlation within 3 SE of 0
  const auto nrec = emp_a.size();
  const Eigen::VectorXd ca = emp_a.array() - emp_a.mean();
  const Eigen::VectorXd cm = emp_mu.array() - emp_mu.mean();
  report.cross_correlation = ca.dot(cm) / std::sqrt(ca.squaredNorm() * cm.squaredNorm());
  report.cross_correlation_se = 1.0 / std::sqrt(static_cast<double>(nrec));
  return report;
}

void write_limit_report_json(const ExperimentSpec& spec, const LimitTestReport& report,
                             const std::filesystem::path& file) {
  json j;
  j["alpha"] = spec.alpha;
  j["H"] = spec.H.H;
  j["sigma_H2"] = report.sigma2;
  j["A_inf"] = report.A_inf;
  j["alpha_ks"] = {{"statistic", report.alpha_ks.statistic},
                   {"p_value", report.alpha_ks.p_value},
                   {"n1", report.alpha_ks.n1},
                   {"n2", report.alpha_ks.n2}};
  if (report.mu_ks) {
    j["mu_ks"] = {{"statistic", report.mu_ks->statistic},
                  {"p_value", report.mu_ks->p_value},
                  {"n1", report.mu_ks->n1}};
  } else {
    j["mu_shrinkage_ok"] = report.mu_shrinkage_ok;
  }
  j["cross_correlation"] = report.cross_correlation;
  j["cross_correlation_se"] = report.cross_correlation_se;
  std::ofstream out(file);
  if (!out) throw std::runtime_error("cannot open " + file.string());
  out << j.dump(2) << '\n';
}

}  // namespace fou
