#include "scsa/problems.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>

namespace scsa {

std::uint64_t Rng::next_u64() {
  state_ += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double Rng::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  // Box-Muller, cosine leg only: two uniforms in, one normal out.
  const double u1 =
      (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53; // (0, 1]
  const double u2 = uniform01();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

std::uint64_t Rng::below(std::uint64_t n) { return next_u64() % n; }

std::string to_string(SignalDist d) {
  return d == SignalDist::Gaussian ? "gaussian" : "rademacher";
}

SignalDist signal_dist_from_string(const std::string& s) {
  if (s == "gaussian") return SignalDist::Gaussian;
  if (s == "rademacher") return SignalDist::Rademacher;
  throw std::invalid_argument("unknown signal distribution: " + s);
}

Problem gen_problem(Index n, Index m, Index s, SignalDist dist, double sigma_w,
                    std::uint64_t seed) {
  if (!(s >= 1 && s < n && n < m))
    throw std::invalid_argument("gen_problem: need 1 <= s < n < m");
  if (sigma_w < 0.0)
    throw std::invalid_argument("gen_problem: sigma_w must be >= 0");

  Rng rng(seed);
  Problem p;
  p.sigma_w = sigma_w;
  p.s = s;
  p.dist = dist;
  p.seed = seed;

  // Column-major fill, then unit-normalize each column.
  p.A.resize(n, m);
  for (Index j = 0; j < m; ++j)
    for (Index i = 0; i < n; ++i) p.A(i, j) = rng.normal();
  for (Index j = 0; j < m; ++j) p.A.col(j) /= p.A.col(j).norm();

  // Uniform s-subset via partial Fisher-Yates, reported sorted.
  std::vector<Index> idx(static_cast<size_t>(m));
  std::iota(idx.begin(), idx.end(), Index{0});
  for (Index k = 0; k < s; ++k) {
    const auto r =
        k + static_cast<Index>(rng.below(static_cast<std::uint64_t>(m - k)));
    std::swap(idx[static_cast<size_t>(k)], idx[static_cast<size_t>(r)]);
  }
  std::vector<Index> support(idx.begin(), idx.begin() + s);
  std::sort(support.begin(), support.end());

  p.x_true = Vector::Zero(m);
  for (Index k = 0; k < s; ++k) {
    double amp;
    if (dist == SignalDist::Gaussian) {
      amp = rng.normal();
    } else {
      amp = (rng.next_u64() >> 63) ? 1.0 : -1.0;
    }
    p.x_true(support[static_cast<size_t>(k)]) = amp;
  }

  if (sigma_w > 0.0) {
    const double norm = p.x_true.norm();
    if (norm > 0.0)
      p.x_true *= std::sqrt(static_cast<double>(s)) / norm;
  }

  p.b = p.A * p.x_true;
  if (sigma_w > 0.0)
    for (Index i = 0; i < n; ++i) p.b(i) += sigma_w * rng.normal();
  return p;
}

double snr_rec(const Vector& x_true, const Vector& x_hat) {
  const double sig = x_true.norm();
  if (sig == 0.0) throw std::invalid_argument("snr_rec: x_true is zero");
  const double err = (x_true - x_hat).norm();
  if (err == 0.0) return kSnrCapDb;
  return std::min(kSnrCapDb, 20.0 * std::log10(sig / err));
}

double msnr_from_sq_errors(double signal_sq_norm,
                           std::vector<double> sq_errors) {
  if (sq_errors.empty())
    throw std::invalid_argument("msnr: no trials");
  std::sort(sq_errors.begin(), sq_errors.end());
  const size_t k = sq_errors.size();
  const double med = (k % 2 == 1)
                         ? sq_errors[k / 2]
                         : 0.5 * (sq_errors[k / 2 - 1] + sq_errors[k / 2]);
  if (med == 0.0) return kSnrCapDb;
  return std::min(kSnrCapDb, 10.0 * std::log10(signal_sq_norm / med));
}

double msnr_rec(const std::vector<Vector>& x_true_list,
                const std::vector<Vector>& x_hat_list) {
  if (x_true_list.empty() || x_true_list.size() != x_hat_list.size())
    throw std::invalid_argument("msnr_rec: lists empty or mismatched");
  std::vector<double> sq;
  sq.reserve(x_true_list.size());
  for (size_t i = 0; i < x_true_list.size(); ++i)
    sq.push_back((x_true_list[i] - x_hat_list[i]).squaredNorm());
  return msnr_from_sq_errors(x_true_list.front().squaredNorm(),
                             std::move(sq));
}

bool srr(const Vector& x_true, const Vector& x_hat, Index s) {
  if (s <= 0 || s > x_hat.size()) return false;
  if ((x_hat.array() == 0.0).all()) return false;

  std::vector<Index> order(static_cast<size_t>(x_hat.size()));
  std::iota(order.begin(), order.end(), Index{0});
  std::partial_sort(order.begin(), order.begin() + s, order.end(),
                    [&](Index a, Index b) {
                      const double va = std::abs(x_hat(a));
                      const double vb = std::abs(x_hat(b));
                      return va != vb ? va > vb : a < b;
                    });
  std::vector<bool> top(static_cast<size_t>(x_hat.size()), false);
  for (Index k = 0; k < s; ++k) top[static_cast<size_t>(order[k])] = true;

  for (Index i = 0; i < x_true.size(); ++i) {
    const bool in_true = x_true(i) != 0.0;
    if (in_true != top[static_cast<size_t>(i)]) return false;
  }
  return true;
}

double success_rate(const std::vector<MetricRecord>& records) {
  if (records.empty()) throw std::invalid_argument("success_rate: no records");
  size_t ok = 0;
  for (const auto& r : records) ok += r.success ? 1 : 0;
  return static_cast<double>(ok) / static_cast<double>(records.size());
}

double mse(const std::vector<MetricRecord>& records) {
  if (records.empty()) throw std::invalid_argument("mse: no records");
  double sum = 0.0;
  for (const auto& r : records) sum += r.sq_error;
  return sum / static_cast<double>(records.size());
}

void save_problem(const std::string& dir, const Problem& p) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  save_matrix_csv(dir + "/A.csv", p.A);
  save_vector_csv(dir + "/b.csv", p.b);
  save_vector_csv(dir + "/x_true.csv", p.x_true);

  nlohmann::json meta;
  meta["n"] = p.A.rows();
  meta["m"] = p.A.cols();
  meta["s"] = p.s;
  meta["dist"] = to_string(p.dist);
  meta["sigma_w"] = p.sigma_w;
  meta["seed"] = p.seed;
  std::ofstream os(dir + "/meta.json");
  if (!os) throw std::runtime_error("cannot write " + dir + "/meta.json");
  os << meta.dump(2) << '\n';
}

Problem load_problem(const std::string& dir) {
  Problem p;
  p.A = load_matrix_csv(dir + "/A.csv");
  p.b = load_vector_csv(dir + "/b.csv");
  p.x_true = load_vector_csv(dir + "/x_true.csv");

  std::ifstream is(dir + "/meta.json");
  if (!is) throw std::runtime_error("cannot read " + dir + "/meta.json");
  nlohmann::json meta = nlohmann::json::parse(is);
  p.s = meta.at("s").get<Index>();
  p.dist = signal_dist_from_string(meta.at("dist").get<std::string>());
  p.sigma_w = meta.at("sigma_w").get<double>();
  p.seed = meta.at("seed").get<std::uint64_t>();
  if (p.A.rows() != meta.at("n").get<Index>() ||
      p.A.cols() != meta.at("m").get<Index>())
    throw std::runtime_error("problem dir: meta.json dimensions disagree");
  return p;
}

} // namespace scsa
