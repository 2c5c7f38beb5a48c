#pragma once

// Umbrella header: season ingestion, win/loss digraphs, eigenvector
// centrality team skills, coach-skill fitting, career ranking, and the
// sensitivity/synthetic experiment harnesses.

#include "coachrank/centrality.hpp"
#include "coachrank/errors.hpp"
#include "coachrank/fit.hpp"
#include "coachrank/graph_export.hpp"
#include "coachrank/ingest.hpp"
#include "coachrank/line_search.hpp"
#include "coachrank/model.hpp"
#include "coachrank/network.hpp"
#include "coachrank/pipeline.hpp"
#include "coachrank/powell.hpp"
#include "coachrank/rank.hpp"
#include "coachrank/rng.hpp"
#include "coachrank/sensitivity.hpp"
#include "coachrank/synthetic.hpp"
