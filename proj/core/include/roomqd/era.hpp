#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "roomqd/dimensions.hpp"
#include "roomqd/engine.hpp"

namespace roomqd {

inline constexpr long kBucketWidth = 100;

/// Bucket b covers generations (100b, 100b + 100]; generation 0 joins bucket 0
/// so a broadcast at generation 100 closes the first bucket.
inline constexpr long bucket_index(long generation) noexcept {
  return generation <= 0 ? 0 : (generation - 1) / kBucketWidth;
}

/// One unique room logged by a run.
struct EraRecord {
  long generation = 0;
  long bucket = 0;  // first generation of its bucket range, bucket_index * 100
  std::uint64_t hash = 0;
  DimensionScores scores{};
  double fitness = 0.0;
  bool feasible = false;

  double score(Dimension d) const noexcept { return scores[static_cast<std::size_t>(d)]; }
};

EraRecord make_record(const Individual& ind, long generation);

class EraFormatError : public std::runtime_error {
 public:
  EraFormatError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Unique rooms of one run, in first-seen order.
class EraDataset {
 public:
  /// False (and nothing stored) when the layout was already recorded.
  bool add(const EraRecord& r);
  const std::vector<EraRecord>& records() const noexcept { return records_; }
  std::size_t size() const noexcept { return records_.size(); }
  bool empty() const noexcept { return records_.empty(); }

  EraDataset feasible_only() const;
  /// Unique count per bucket index, sized to the last bucket.
  std::vector<std::size_t> uniques_per_bucket() const;

 private:
  std::vector<EraRecord> records_;
  std::unordered_set<std::uint64_t> seen_;
};

/// Observer that feeds the rooms it is shown into a dataset, once per layout.
class EraLogger {
 public:
  void operator()(const Individual& ind, long generation) { data_.add(make_record(ind, generation)); }
  const EraDataset& dataset() const noexcept { return data_; }
  EraDataset take() { return std::move(data_); }

 private:
  EraDataset data_;
};

// CSV: header row, then
// generation,bucket,hash,<seven scores by dimension name>,fitness,feasible
// hash is 16 lowercase hex digits, reals are written to round-trip exactly.
void write_csv(const EraDataset& data, std::ostream& out);
EraDataset read_csv(std::istream& in);  // throws EraFormatError
void save_csv(const EraDataset& data, const std::filesystem::path& path);
EraDataset load_csv(const std::filesystem::path& path);

using DimensionPair = std::pair<Dimension, Dimension>;

/// The 21 unordered pairs in canonical order.
std::vector<DimensionPair> all_dimension_pairs();

/// Percent of the g x g grid over (a, b) holding at least one feasible record.
double pair_coverage(const EraDataset& data, Dimension a, Dimension b, int granularity);

struct CoverageStats {
  std::optional<double> pair_coverage;  // for the run's own pair, when it has one
  double all_dim_coverage = 0.0;        // mean over the 21 pair projections
  double single_dim_coverage = 0.0;     // mean over the 7 one-dimensional projections
  double avg_fitness = 0.0;             // mean fitness of feasible records
  std::size_t feasible_uniques = 0;
};

/// Coverage over feasible records. Throws std::invalid_argument on an empty dataset.
CoverageStats coverage(const EraDataset& data, std::optional<DimensionPair> pair, int granularity = 5);

/// Fixed pointy-top hexagon lattice on [0,1]^2 with 30 columns. Row j has
/// centres at x = (i + (j odd ? 1/2 : 0)) / 30 and y = 1.5 r j, r = 1 / (30 sqrt 3).
struct HexLattice {
  static constexpr int kColumns = 30;
  static double radius() noexcept;
  static double column_step() noexcept { return 1.0 / kColumns; }
  static double row_step() noexcept { return 1.5 * radius(); }
  static int rows() noexcept;        // rows needed to cover y in [0, 1]
  static int columns() noexcept { return kColumns + 1; }
  static std::pair<double, double> center(int col, int row) noexcept;
  /// Hexagon containing (x, y): the nearest centre, lower (row, col) on ties.
  static std::pair<int, int> locate(double x, double y) noexcept;
};

struct HexBin {
  int col = 0;
  int row = 0;
  double cx = 0.0;
  double cy = 0.0;
  std::size_t count = 0;
};

/// Every lattice hexagon in (row, col) order with the number of records in it.
std::vector<HexBin> hexbin_export(const EraDataset& data, Dimension x, Dimension y);
void write_hexbin_csv(const std::vector<HexBin>& bins, std::ostream& out);

/// Pearson correlation; 0 when either series is constant or has < 2 points.
double pearson(const std::vector<double>& xs, const std::vector<double>& ys);

struct DimensionFitness {
  Dimension dim = Dimension::Symmetry;
  std::vector<std::pair<double, double>> points;  // (score, fitness), record order
  double pearson_r = 0.0;
};

/// Score/fitness relation for each of the 7 dimensions over feasible records.
/// Throws std::invalid_argument on an empty dataset.
std::vector<DimensionFitness> fitness_by_dimension(const EraDataset& data);

struct BucketFitness {
  long bucket = 0;
  std::size_t count = 0;
  double mean = 0.0;     // NaN when the bucket is empty
  double max = 0.0;      // NaN when the bucket is empty
  double ci95 = 0.0;     // half-width of the normal 95% interval of the mean
};

/// Mean/max fitness of feasible novel rooms per 100-generation bucket, from
/// bucket 0 to the last one seen. Empty buckets are gaps (NaN), not zeros.
std::vector<BucketFitness> fitness_over_time(const EraDataset& data);
void write_fitness_over_time_csv(const std::vector<BucketFitness>& series, std::ostream& out);

}  // namespace roomqd
