#pragma once

#include "levelspec/graph.hpp"

#include <vector>

namespace levelspec {

//! Connected components of the h-ball graph (edges at distance < h).
//! Component ids are ordered by their smallest member index.
struct ComponentLabeling
{
  std::vector<int> labels;
  int count = 0;
};

//! Union-find over all O(n^2) pairs.
ComponentLabeling
connected_components(const Matrix& points, double h);

//! Smallest Euclidean distance between two points carrying different
//! component labels. Throws ValidationError ("d_min undefined") for a single
//! component.
double
min_intercomponent_distance(const Matrix& points, const ComponentLabeling& labeling);

//! Full spectrum of I - S (ascending) by cyclic Jacobi rotations on a dense
//! matrix rebuilt from the stored K entries. Shares no code with the main
//! eigensolver. Limited to 2000 points.
std::vector<double>
dense_reference_spectrum(const SimilarityGraph& g);

inline constexpr Eigen::Index kMaxReferenceSize = 2000;

} // namespace levelspec
