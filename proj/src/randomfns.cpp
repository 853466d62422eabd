#include "smco/randomfns.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace smco {

namespace {

double standardize_column(std::vector<double>& column) {
  const double n = static_cast<double>(column.size());
  double mean = 0.0;
  for (double v : column) mean += v;
  mean /= n;
  double var = 0.0;
  for (double v : column) var += (v - mean) * (v - mean);
  var /= n;
  const double sd = std::sqrt(var);
  detail::require(sd > 0.0, "gen_ew_data: degenerate covariate column");
  for (double& v : column) v = (v - mean) / sd;
  return sd;
}

}  // namespace

MsDataset gen_ms_data(int dim, int n, std::uint64_t seed, double eps_scale) {
  detail::require(dim >= 1, "gen_ms_data: dim must be >= 1");
  detail::require(n >= 1, "gen_ms_data: n must be >= 1");
  detail::require(eps_scale >= 0.0, "gen_ms_data: eps_scale must be >= 0");

  RngStream rng(seed, 0);
  MsDataset data;
  data.dim = dim;
  data.true_beta.resize(dim);
  for (int j = 0; j < dim; ++j) data.true_beta[j] = rng.normal();

  const double sd = std::sqrt(static_cast<double>(dim));
  data.x1.resize(n);
  data.x_rest.resize(n);
  data.y.resize(n);
  for (int i = 0; i < n; ++i) {
    data.x1[i] = sd * rng.normal();
    Vec rest(dim);
    double index = data.x1[i];
    for (int j = 0; j < dim; ++j) {
      rest[j] = rng.normal();
      index += rest[j] * data.true_beta[j];
    }
    const double eps = eps_scale * sd * rng.normal();
    data.y[i] = index + eps >= 0.0 ? 1 : 0;
    data.x_rest[i] = std::move(rest);
  }
  return data;
}

double eval_ms(const MsDataset& data, const Vec& beta) {
  detail::require(static_cast<int>(beta.size()) == data.dim,
                  "eval_ms: beta dimension mismatch");
  long long hits = 0;
  for (int i = 0; i < data.size(); ++i) {
    if (data.y[i] == 0) continue;
    double index = data.x1[i];
    for (int j = 0; j < data.dim; ++j) index += data.x_rest[i][j] * beta[j];
    if (index >= 0.0) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(data.size());
}

Objective make_ms_objective(const MsDataset& data) {
  Objective obj;
  obj.dim = data.dim;
  obj.direction = Direction::Maximize;
  obj.eval = [data](const Vec& beta) { return eval_ms(data, beta); };
  return obj;
}

Box ms_default_box(int dim) { return Box(dim, -20.0, 20.0); }

EwDataset gen_ew_data(int dim, int n, std::uint64_t seed) {
  detail::require(dim >= 2, "gen_ew_data: dim must be >= 2");
  detail::require(n >= 2, "gen_ew_data: n must be >= 2");

  RngStream rng(seed, 0);
  const int ncov = dim - 1;

  std::vector<double> earnings(n), education(n);
  std::vector<int> treated(n);
  std::vector<Vec> extra(n);
  for (int i = 0; i < n; ++i) {
    earnings[i] = std::exp(rng.normal());
    education[i] = 12.0 + 2.0 * rng.normal();
    treated[i] = rng.bernoulli(2.0 / 3.0) ? 1 : 0;
    if (ncov > 4) {
      extra[i].resize(ncov - 4);
      for (double& v : extra[i]) v = rng.normal();
    }
  }

  std::vector<double> educ2(n), educ3(n);
  for (int i = 0; i < n; ++i) {
    educ2[i] = education[i] * education[i];
    educ3[i] = educ2[i] * education[i];
  }
  standardize_column(earnings);
  standardize_column(education);
  standardize_column(educ2);
  standardize_column(educ3);

  EwDataset data;
  data.dim = dim;
  data.treated = std::move(treated);
  data.x.resize(n);
  data.y.resize(n);
  for (int i = 0; i < n; ++i) {
    Vec row(ncov);
    row[0] = earnings[i];
    if (ncov > 1) row[1] = education[i];
    if (ncov > 2) row[2] = educ2[i];
    if (ncov > 3) row[3] = educ3[i];
    for (int j = 4; j < ncov; ++j) row[j] = extra[i][j - 4];

    const double effect = 1.0 + 2.0 * (ncov > 1 ? row[1] : 0.0) - row[0];
    data.y[i] = 5.0 + row[0] + 0.5 * (ncov > 1 ? row[1] : 0.0) +
                static_cast<double>(data.treated[i]) * effect + rng.normal();
    data.x[i] = std::move(row);
  }
  return data;
}

double eval_ew(const EwDataset& data, const Vec& beta) {
  detail::require(static_cast<int>(beta.size()) == data.dim,
                  "eval_ew: beta dimension mismatch");
  const double p = data.propensity;
  double sum = 0.0;
  for (int i = 0; i < data.size(); ++i) {
    double index = beta[0];
    for (int j = 1; j < data.dim; ++j) index += data.x[i][j - 1] * beta[j];
    if (index < 0.0) continue;
    const double weight =
        data.treated[i] ? 1.0 / p : -1.0 / (1.0 - p);
    sum += weight * data.y[i];
  }
  return sum / static_cast<double>(data.size());
}

Objective make_ew_objective(const EwDataset& data) {
  Objective obj;
  obj.dim = data.dim;
  obj.direction = Direction::Maximize;
  obj.eval = [data](const Vec& beta) { return eval_ew(data, beta); };
  return obj;
}

Box ew_default_box(int dim) { return Box(dim, -20.0, 20.0); }

void save_ms_dataset(const MsDataset& data, std::ostream& out) {
  out << "# ms dim=" << data.dim;
  if (!data.true_beta.empty()) {
    out << " beta0=";
    for (int j = 0; j < data.dim; ++j)
      out << (j ? "," : "") << data.true_beta[j];
  }
  out << "\n";
  out << "y x1";
  for (int j = 0; j < data.dim; ++j) out << " x" << (j + 2);
  out << "\n";
  out.precision(17);
  for (int i = 0; i < data.size(); ++i) {
    out << data.y[i] << ' ' << data.x1[i];
    for (int j = 0; j < data.dim; ++j) out << ' ' << data.x_rest[i][j];
    out << "\n";
  }
}

MsDataset load_ms_dataset(std::istream& in) {
  MsDataset data;
  std::string line;
  bool header_done = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_done) {  // column-name row
      header_done = true;
      continue;
    }
    std::istringstream row(line);
    int y = 0;
    double x1 = 0.0;
    detail::require(static_cast<bool>(row >> y >> x1),
                    "load_ms_dataset: malformed row");
    Vec rest;
    double v = 0.0;
    while (row >> v) rest.push_back(v);
    if (data.dim == 0) data.dim = static_cast<int>(rest.size());
    detail::require(static_cast<int>(rest.size()) == data.dim,
                    "load_ms_dataset: ragged row");
    data.y.push_back(y);
    data.x1.push_back(x1);
    data.x_rest.push_back(std::move(rest));
  }
  detail::require(data.size() > 0, "load_ms_dataset: no observations");
  return data;
}

void save_ew_dataset(const EwDataset& data, std::ostream& out) {
  out << "# ew dim=" << data.dim << " propensity=" << data.propensity << "\n";
  out << "d y";
  for (int j = 0; j < data.dim - 1; ++j) out << " x" << (j + 1);
  out << "\n";
  out.precision(17);
  for (int i = 0; i < data.size(); ++i) {
    out << data.treated[i] << ' ' << data.y[i];
    for (int j = 0; j < data.dim - 1; ++j) out << ' ' << data.x[i][j];
    out << "\n";
  }
}

EwDataset load_ew_dataset(std::istream& in) {
  EwDataset data;
  std::string line;
  bool header_done = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto pos = line.find("propensity=");
      if (pos != std::string::npos)
        data.propensity = std::stod(line.substr(pos + 11));
      continue;
    }
    if (!header_done) {
      header_done = true;
      continue;
    }
    std::istringstream row(line);
    int d = 0;
    double y = 0.0;
    detail::require(static_cast<bool>(row >> d >> y),
                    "load_ew_dataset: malformed row");
    Vec x;
    double v = 0.0;
    while (row >> v) x.push_back(v);
    if (data.dim == 0) data.dim = static_cast<int>(x.size()) + 1;
    detail::require(static_cast<int>(x.size()) + 1 == data.dim,
                    "load_ew_dataset: ragged row");
    data.treated.push_back(d);
    data.y.push_back(y);
    data.x.push_back(std::move(x));
  }
  detail::require(data.size() > 0, "load_ew_dataset: no observations");
  return data;
}

Objective penalize(const Objective& obj, const PenaltySpec& spec) {
  detail::require(obj.direction == Direction::Maximize,
                  "penalize: expects a maximization objective");
  detail::require(spec.equality_weight > 0.0 && spec.inequality_weight > 0.0,
                  "penalize: weights must be > 0");
  Objective out;
  out.dim = obj.dim;
  out.direction = Direction::Maximize;
  out.eval = [inner = obj.eval, spec](const Vec& x) {
    double value = inner(x);
    for (const auto& g : spec.equalities) {
      const double gi = g(x);
      value -= spec.equality_weight * gi * gi;
    }
    for (const auto& h : spec.inequalities) {
      const double hj = std::max(0.0, h(x));
      value -= spec.inequality_weight * hj * hj;
    }
    return value;
  };
  return out;
}

}  // namespace smco
