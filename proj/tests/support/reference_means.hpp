#pragma once

#include "lotforge/survey.hpp"

#include <cstdint>
#include <map>
#include <string>

namespace lotforge::testing {

using ReferenceMeans = std::map<std::string, MetricMeans>;

/// Reads tests/fixtures/reference_means.csv (scenario plus one column per metric).
ReferenceMeans load_reference_means(const std::string& path);

struct SynthesisOptions {
  int designs = 28;
  int raters = 5;             // each rates every design of its scenario once
  int checks_per_rater = 4;
  int careless_raters = 3;    // per scenario; fail >= 2 checks and rate everything 1
  std::uint64_t seed = 7;
};

/// Integer ratings whose scenario means land within 0.5 / (designs * raters)
/// of every reference cell. Good raters fail at most one check.
RatingDataset synthesize_ratings(const ReferenceMeans& table, const SynthesisOptions& options = {});

/// Raters with a known number of failed checks, for exclusion tests.
struct AttentionCase {
  RatingDataset dataset;
  std::vector<std::string> expected_excluded;  // sorted
};

AttentionCase attention_case(std::uint64_t seed, int raters = 20);

}  // namespace lotforge::testing
