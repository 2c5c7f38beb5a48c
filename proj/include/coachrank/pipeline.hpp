#pragma once

#include <cstdint>
#include <string>

#include "coachrank/centrality.hpp"
#include "coachrank/fit.hpp"
#include "coachrank/graph_export.hpp"
#include "coachrank/model.hpp"
#include "coachrank/network.hpp"

namespace coachrank {

// Everything needed to run one season end to end. `scale_auto` replaces the
// model scale with the season's mean absolute margin, which keeps residuals
// O(1) across sports with different typical margins.
struct PipelineConfig {
  double epsilon = kDefaultEpsilon;
  double centrality_tol = kDefaultCentralityTol;
  int centrality_max_iter = kDefaultCentralityMaxIter;
  bool rescale_centrality = true;
  SkillModelParams model;
  bool scale_auto = true;
  PowellConfig optimizer;
};

struct SeasonAnalysis {
  SeasonDataset dataset;
  SeasonNetwork network;
  CentralityVector centrality;
  std::vector<GameObservation> observations;
  SkillModelParams params;  // with the resolved scale
  FitResult fit;
};

// network -> centrality -> observations -> fit for one season. Throws
// NotConvergedError when the centrality iteration stalls; the fit seed is
// taken verbatim so identical (dataset, config, seed) is bit-reproducible.
inline SeasonAnalysis run_season_pipeline(SeasonDataset dataset,
                                          const PipelineConfig& config,
                                          std::uint64_t seed) {
  SeasonAnalysis analysis;
  analysis.dataset = std::move(dataset);
  analysis.network = build_network(analysis.dataset);
  analysis.centrality =
      eigenvector_centrality(analysis.network, config.epsilon,
                             config.centrality_tol, config.centrality_max_iter);
  if (!analysis.centrality.converged) {
    throw NotConvergedError(
        "centrality did not converge for season " +
            std::to_string(analysis.dataset.season) +
            " (epsilon = " + csv::format_double(config.epsilon) + ")",
        analysis.centrality);
  }
  analysis.observations = build_observations(
      analysis.dataset, analysis.centrality, config.rescale_centrality);

  analysis.params = config.model;
  if (config.scale_auto) {
    const double m = mean_abs_margin(analysis.observations);
    analysis.params.scale = m > 0.0 ? m : 1.0;
  }

  PowellConfig optimizer = config.optimizer;
  optimizer.seed = seed;
  analysis.fit = fit_season(analysis.observations, coach_map(analysis.dataset),
                            analysis.params, optimizer);
  return analysis;
}

}  // namespace coachrank
