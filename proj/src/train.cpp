// lvdsk/train.cpp

// Copyright 2026  LVDSK Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "lvdsk/train.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "lvdsk/numeric.hpp"

namespace lvdsk {

namespace {

constexpr double kWeightFloor = 1e-12;
constexpr double kDofSolveMax = 200.0;  // trained dof cap; near-Gaussian beyond this

std::vector<double> variance_floor(const FeatureMatrix& x, double frac) {
  const int d = x.dim, t = x.frames;
  std::vector<double> mean(d, 0.0), var(d, 0.0);
  for (int j = 0; j < t; ++j)
    for (int i = 0; i < d; ++i) mean[i] += x.at(i, j);
  for (int i = 0; i < d; ++i) mean[i] /= t;
  for (int j = 0; j < t; ++j)
    for (int i = 0; i < d; ++i) {
      const double z = x.at(i, j) - mean[i];
      var[i] += z * z;
    }
  std::vector<double> floor(d);
  for (int i = 0; i < d; ++i) floor[i] = std::max(frac * var[i] / t, 1e-10);
  return floor;
}

// Seeded k-means++ centers followed by a few Lloyd sweeps; returns the
// initial moment estimates per cluster.
MixtureModel kmeanspp_init(const FeatureMatrix& x, ModelFamily family, int n_components,
                           std::mt19937_64& rng, const std::vector<double>& floor,
                           double init_dof) {
  const int d = x.dim, t = x.frames, kk = n_components;

  std::vector<std::vector<double>> centers;
  centers.reserve(kk);
  const int first = static_cast<int>(rand_index(rng, t));
  centers.emplace_back(x.frame(first).begin(), x.frame(first).end());

  std::vector<double> dist2(t, std::numeric_limits<double>::infinity());
  while (static_cast<int>(centers.size()) < kk) {
    const auto& c = centers.back();
    double total = 0.0;
    for (int j = 0; j < t; ++j) {
      double s = 0.0;
      for (int i = 0; i < d; ++i) {
        const double z = x.at(i, j) - c[i];
        s += z * z;
      }
      dist2[j] = std::min(dist2[j], s);
      total += dist2[j];
    }
    int pick;
    if (total <= 0.0) {
      pick = static_cast<int>(rand_index(rng, t));
    } else {
      double u = rand_u01(rng) * total, acc = 0.0;
      pick = t - 1;
      for (int j = 0; j < t; ++j) {
        acc += dist2[j];
        if (acc >= u) {
          pick = j;
          break;
        }
      }
    }
    centers.emplace_back(x.frame(pick).begin(), x.frame(pick).end());
  }

  std::vector<int> assign(t, 0);
  for (int sweep = 0; sweep < 10; ++sweep) {
    for (int j = 0; j < t; ++j) {
      double best = std::numeric_limits<double>::infinity();
      int arg = 0;
      for (int c = 0; c < kk; ++c) {
        double s = 0.0;
        for (int i = 0; i < d; ++i) {
          const double z = x.at(i, j) - centers[c][i];
          s += z * z;
        }
        if (s < best) {
          best = s;
          arg = c;
        }
      }
      assign[j] = arg;
    }
    for (int c = 0; c < kk; ++c) {
      std::vector<double> sum(d, 0.0);
      int n = 0;
      for (int j = 0; j < t; ++j)
        if (assign[j] == c) {
          for (int i = 0; i < d; ++i) sum[i] += x.at(i, j);
          ++n;
        }
      if (n > 0)
        for (int i = 0; i < d; ++i) centers[c][i] = sum[i] / n;
    }
  }

  MixtureModel model;
  model.family = family;
  model.dim = d;
  model.components.resize(kk);
  double wsum = 0.0;
  for (int c = 0; c < kk; ++c) {
    MixtureComponent& comp = model.components[c];
    comp.mean = centers[c];
    comp.var.assign(d, 0.0);
    int n = 0;
    for (int j = 0; j < t; ++j)
      if (assign[j] == c) {
        ++n;
        for (int i = 0; i < d; ++i) {
          const double z = x.at(i, j) - comp.mean[i];
          comp.var[i] += z * z;
        }
      }
    for (int i = 0; i < d; ++i)
      comp.var[i] = std::max(n > 0 ? comp.var[i] / n : 0.0, floor[i]);
    comp.weight = std::max(static_cast<double>(n) / t, kWeightFloor);
    wsum += comp.weight;
    if (family == ModelFamily::student_t) comp.dof = init_dof;
  }
  for (auto& comp : model.components) comp.weight /= wsum;
  return model;
}

// Root of the per-component maximum-likelihood dof equation on
// [kDofMin, kDofSolveMax]; clamps to the nearer endpoint when the equation
// has no sign change there (the objective is monotone in dof, so the
// constrained optimum sits on the boundary).
double solve_dof(std::span<const double> z, std::span<const double> u, double n_c,
                 double dof_old, int d, double fallback) {
  if (!(n_c > 0.0)) return fallback;
  double s = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i)
    if (z[i] > 0.0) s += z[i] * (std::log(u[i]) - u[i]);
  s /= n_c;
  if (!std::isfinite(s)) return fallback;
  const double c0 = digamma(0.5 * (dof_old + d)) - std::log(0.5 * (dof_old + d));
  auto g = [&](double nu) {
    return 1.0 + std::log(0.5 * nu) - digamma(0.5 * nu) + s + c0;
  };
  double lo = kDofMin, hi = kDofSolveMax;
  if (g(lo) <= 0.0) return lo;
  if (g(hi) >= 0.0) return hi;
  for (int it = 0; it < 100 && hi - lo > 1e-10; ++it) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

TrainResult em_fit(const FeatureMatrix& x, ModelFamily family, MixtureModel model,
                   const TrainConfig& cfg, const std::vector<double>& floor) {
  const int d = x.dim, t = x.frames, kk = cfg.n_components;
  const bool student = family == ModelFamily::student_t;

  std::vector<double> z(static_cast<std::size_t>(t) * kk);  // responsibilities
  std::vector<double> u(student ? z.size() : 0);            // precision weights
  std::vector<double> frame_ll(t);
  std::vector<double> base(kk), terms(kk), maha(kk);

  TrainResult result;
  double prev_ll = 0.0;

  for (int iter = 0; iter < cfg.max_iters; ++iter) {
    for (int c = 0; c < kk; ++c) {
      const MixtureComponent& comp = model.components[c];
      double logdet = 0.0;
      for (int i = 0; i < d; ++i) logdet += std::log(comp.var[i]);
      if (student) {
        const double nu = *comp.dof;
        base[c] = std::log(comp.weight) + std::lgamma(0.5 * (nu + d)) - std::lgamma(0.5 * nu) -
                  0.5 * d * (std::log(nu) + std::log(M_PI)) - 0.5 * logdet;
      } else {
        base[c] = std::log(comp.weight) - 0.5 * (d * kLogTwoPi + logdet);
      }
    }

    for (int j = 0; j < t; ++j) {
      for (int c = 0; c < kk; ++c) {
        const MixtureComponent& comp = model.components[c];
        double m = 0.0;
        for (int i = 0; i < d; ++i) {
          const double zz = x.at(i, j) - comp.mean[i];
          m += zz * zz / comp.var[i];
        }
        maha[c] = m;
        terms[c] = student ? base[c] - 0.5 * (*comp.dof + d) * std::log1p(m / *comp.dof)
                           : base[c] - 0.5 * m;
      }
      const double lse = log_sum_exp(terms);
      frame_ll[j] = lse;
      for (int c = 0; c < kk; ++c) {
        z[static_cast<std::size_t>(j) * kk + c] = std::exp(terms[c] - lse);
        if (student) {
          const double nu = *model.components[c].dof;
          u[static_cast<std::size_t>(j) * kk + c] = (nu + d) / (nu + maha[c]);
        }
      }
    }

    const double ll = pairwise_sum(frame_ll);
    result.loglik.push_back(ll);
    if (iter > 0 && std::abs(ll - prev_ll) <= cfg.rel_tol * std::abs(prev_ll)) break;
    prev_ll = ll;

    // M-step
    std::vector<double> col(t);
    double wsum = 0.0;
    for (int c = 0; c < kk; ++c) {
      MixtureComponent& comp = model.components[c];
      for (int j = 0; j < t; ++j) col[j] = z[static_cast<std::size_t>(j) * kk + c];
      const double n_c = pairwise_sum(col);

      if (n_c > 0.0) {
        std::vector<double> mean_new(d, 0.0);
        double denom = n_c;
        if (student) {
          double zu = 0.0;
          for (int j = 0; j < t; ++j) {
            const double w = z[static_cast<std::size_t>(j) * kk + c] *
                             u[static_cast<std::size_t>(j) * kk + c];
            zu += w;
            for (int i = 0; i < d; ++i) mean_new[i] += w * x.at(i, j);
          }
          denom = zu;
        } else {
          for (int j = 0; j < t; ++j) {
            const double w = z[static_cast<std::size_t>(j) * kk + c];
            for (int i = 0; i < d; ++i) mean_new[i] += w * x.at(i, j);
          }
        }
        if (denom > 0.0) {
          for (int i = 0; i < d; ++i) mean_new[i] /= denom;
          std::vector<double> var_new(d, 0.0);
          for (int j = 0; j < t; ++j) {
            double w = z[static_cast<std::size_t>(j) * kk + c];
            if (student) w *= u[static_cast<std::size_t>(j) * kk + c];
            for (int i = 0; i < d; ++i) {
              const double zz = x.at(i, j) - mean_new[i];
              var_new[i] += w * zz * zz;
            }
          }
          for (int i = 0; i < d; ++i)
            var_new[i] = std::max(var_new[i] / n_c, floor[i]);
          comp.mean = std::move(mean_new);
          comp.var = std::move(var_new);
        }
        if (student && cfg.dof_mode == DofMode::estimate) {
          std::vector<double> uc(t);
          for (int j = 0; j < t; ++j) uc[j] = u[static_cast<std::size_t>(j) * kk + c];
          comp.dof = solve_dof(col, uc, n_c, *comp.dof, d, cfg.fixed_dof);
        }
      }
      comp.weight = std::max(n_c / t, kWeightFloor);
      wsum += comp.weight;
    }
    for (auto& comp : model.components) comp.weight /= wsum;
  }

  result.model = std::move(model);
  return result;
}

}  // namespace

void TrainConfig::validate() const {
  if (n_components < 1) throw std::invalid_argument("train: n_components must be >= 1");
  if (!(rel_tol > 0.0)) throw std::invalid_argument("train: rel_tol must be positive");
  if (max_iters < 1) throw std::invalid_argument("train: max_iters must be >= 1");
  if (n_restarts < 1) throw std::invalid_argument("train: n_restarts must be >= 1");
  if (!(var_floor_frac > 0.0)) throw std::invalid_argument("train: var_floor_frac must be positive");
  if (!(fixed_dof >= kDofMin)) throw std::invalid_argument("train: fixed_dof below minimum");
}

TrainResult train_mixture(const FeatureMatrix& features, ModelFamily family,
                          const TrainConfig& cfg) {
  cfg.validate();
  features.validate();
  if (features.frames < cfg.n_components)
    throw std::invalid_argument("train: " + std::to_string(features.frames) +
                                " frames is fewer than " + std::to_string(cfg.n_components) +
                                " components");

  const std::vector<double> floor = variance_floor(features, cfg.var_floor_frac);
  const double init_dof = cfg.fixed_dof;

  TrainResult best;
  for (int r = 0; r < cfg.n_restarts; ++r) {
    std::mt19937_64 rng(mix_seed(cfg.seed, static_cast<std::uint64_t>(r)));
    MixtureModel init =
        kmeanspp_init(features, family, cfg.n_components, rng, floor, init_dof);
    TrainResult fit = em_fit(features, family, std::move(init), cfg, floor);
    if (best.loglik.empty() || fit.loglik.back() > best.loglik.back()) best = std::move(fit);
  }
  best.model.validate();
  return best;
}

void FeatureCorpus::validate(int min_reps) const {
  if (speakers.empty() || keywords.empty())
    throw std::invalid_argument("corpus: empty speaker or keyword list");
  if (cells.size() != speakers.size())
    throw std::invalid_argument("corpus: speaker grid size mismatch");
  int d = -1;
  for (std::size_t k = 0; k < cells.size(); ++k) {
    if (cells[k].size() != keywords.size())
      throw std::invalid_argument("corpus: keyword grid size mismatch");
    for (std::size_t l = 0; l < cells[k].size(); ++l) {
      if (static_cast<int>(cells[k][l].size()) < min_reps)
        throw std::invalid_argument("corpus cell (" + speakers[k] + ", " + keywords[l] +
                                    ") has " + std::to_string(cells[k][l].size()) +
                                    " utterances, need >= " + std::to_string(min_reps));
      for (const auto& utt : cells[k][l]) {
        if (d < 0) d = utt.dim;
        if (utt.dim != d)
          throw std::invalid_argument("corpus has mixed feature dimensions " +
                                      std::to_string(d) + " vs " + std::to_string(utt.dim) +
                                      " at cell (" + speakers[k] + ", " + keywords[l] + ")");
      }
    }
  }
}

int FeatureCorpus::dim() const {
  for (const auto& row : cells)
    for (const auto& cell : row)
      if (!cell.empty()) return cell.front().dim;
  return 0;
}

ModelBank train_bank(const FeatureCorpus& corpus, ModelFamily family, const TrainConfig& cfg) {
  corpus.validate(1);
  const int m = corpus.num_speakers(), n = corpus.num_keywords();

  ModelBank bank;
  bank.speakers = corpus.speakers;
  bank.keywords = corpus.keywords;
  bank.models.resize(static_cast<std::size_t>(m) * n);

  std::vector<std::string> errors(bank.models.size());

#pragma omp parallel for collapse(2) schedule(dynamic)
  for (int k = 0; k < m; ++k) {
    for (int l = 0; l < n; ++l) {
      try {
        const auto& utts = corpus.cells[k][l];
        int total = 0;
        for (const auto& utt : utts) total += utt.frames;
        FeatureMatrix all(corpus.dim(), total);
        int at = 0;
        for (const auto& utt : utts) {
          std::copy(utt.data.begin(), utt.data.end(),
                    all.data.begin() + static_cast<std::size_t>(at) * all.dim);
          at += utt.frames;
        }
        TrainConfig cell_cfg = cfg;
        cell_cfg.seed = mix_seed(cfg.seed, static_cast<std::uint64_t>(k),
                                 static_cast<std::uint64_t>(l));
        bank.model(k, l) = train_mixture(all, family, cell_cfg).model;
      } catch (const std::exception& e) {
        errors[static_cast<std::size_t>(k) * n + l] = e.what();
      }
    }
  }

  for (std::size_t i = 0; i < errors.size(); ++i)
    if (!errors[i].empty())
      throw std::runtime_error("train_bank: cell (" + corpus.speakers[i / n] + ", " +
                               corpus.keywords[i % n] + "): " + errors[i]);
  bank.validate();
  return bank;
}

}  // namespace lvdsk
