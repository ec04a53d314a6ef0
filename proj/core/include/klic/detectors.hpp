#pragma once

#include "klic/montecarlo.hpp"
#include "klic/scenario_cj.hpp"
#include "klic/scenario_nlj.hpp"
#include "klic/scenario_rst.hpp"
#include "klic/signal_model.hpp"

namespace klic {

// Ready-to-run score samplers binding a scenario's data model to its GLR
// statistics and a penalty rule. truth = 0 draws H0 in every scenario.

ScoreSampler make_nlj_scorer(const NljScenario& s, double sigma_n2, const PenaltyRule& rule,
                             int truth);

ScoreSampler make_cj_scorer(const CjScenario& s, const PenaltyRule& rule, int truth);

ScoreSampler make_rst_scorer(const RstScenario& s, const PenaltyRule& rule, int truth);

// (size, position) readout for RST selections, used for RMSE curves.
EstimateMap rst_estimate_map(int window_length);

}  // namespace klic
