#pragma once

// Umbrella header: the whole toolkit in one include.

#include "clusterkit/builder.hpp"
#include "clusterkit/clustering.hpp"
#include "clusterkit/dataset.hpp"
#include "clusterkit/distance_matrix.hpp"
#include "clusterkit/evaluation.hpp"
#include "clusterkit/extraction.hpp"
#include "clusterkit/hac.hpp"
#include "clusterkit/initialization.hpp"
#include "clusterkit/io.hpp"
#include "clusterkit/kmeans.hpp"
#include "clusterkit/kmedoids.hpp"
#include "clusterkit/linkage.hpp"
#include "clusterkit/merge_history.hpp"
#include "clusterkit/metric.hpp"
#include "clusterkit/random.hpp"
#include "clusterkit/runner.hpp"
