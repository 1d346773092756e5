#include "roomqd/era.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace roomqd {

EraRecord make_record(const Individual& ind, long generation) {
  EraRecord r;
  r.generation = generation;
  r.bucket = bucket_index(generation) * kBucketWidth;
  r.hash = ind.hash;
  r.scores = ind.eval.scores;
  r.fitness = ind.fitness();
  r.feasible = ind.eval.feasible;
  return r;
}

bool EraDataset::add(const EraRecord& r) {
  if (!seen_.insert(r.hash).second) return false;
  records_.push_back(r);
  return true;
}

EraDataset EraDataset::feasible_only() const {
  EraDataset out;
  for (const auto& r : records_) {
    if (r.feasible) out.add(r);
  }
  return out;
}

std::vector<std::size_t> EraDataset::uniques_per_bucket() const {
  std::vector<std::size_t> out;
  for (const auto& r : records_) {
    const auto b = static_cast<std::size_t>(bucket_index(r.generation));
    if (out.size() <= b) out.resize(b + 1, 0);
    ++out[b];
  }
  return out;
}

// ------------------------------------------------------------------- CSV

namespace {

std::string format_real(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string format_hash(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

template <typename T>
T parse_field(std::string_view s, std::size_t line, const char* what, int base = 10) {
  T v{};
  std::from_chars_result res;
  if constexpr (std::is_floating_point_v<T>) {
    res = std::from_chars(s.data(), s.data() + s.size(), v);
  } else {
    res = std::from_chars(s.data(), s.data() + s.size(), v, base);
  }
  if (s.empty() || res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw EraFormatError(line, std::string("bad ") + what + " '" + std::string(s) + "'");
  }
  return v;
}

std::string csv_header() {
  std::string h = "generation,bucket,hash";
  for (Dimension d : kAllDimensions) {
    h += ',';
    h += name(d);
  }
  h += ",fitness,feasible";
  return h;
}

}  // namespace

void write_csv(const EraDataset& data, std::ostream& out) {
  out << csv_header() << '\n';
  for (const auto& r : data.records()) {
    out << r.generation << ',' << r.bucket << ',' << format_hash(r.hash);
    for (double s : r.scores) out << ',' << format_real(s);
    out << ',' << format_real(r.fitness) << ',' << (r.feasible ? 1 : 0) << '\n';
  }
}

EraDataset read_csv(std::istream& in) {
  EraDataset data;
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) return data;
  ++lineno;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != csv_header()) throw EraFormatError(lineno, "unexpected header");
  constexpr std::size_t kFields = 3 + kDimensionCount + 2;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != kFields) {
      throw EraFormatError(lineno, "expected " + std::to_string(kFields) + " fields, got " + std::to_string(f.size()));
    }
    EraRecord r;
    r.generation = parse_field<long>(f[0], lineno, "generation");
    r.bucket = parse_field<long>(f[1], lineno, "bucket");
    if (r.generation < 0 || r.bucket != bucket_index(r.generation) * kBucketWidth) {
      throw EraFormatError(lineno, "bucket does not match generation");
    }
    if (f[2].size() != 16) throw EraFormatError(lineno, "hash must have 16 hex digits");
    r.hash = parse_field<std::uint64_t>(f[2], lineno, "hash", 16);
    for (std::size_t i = 0; i < kDimensionCount; ++i) {
      r.scores[i] = parse_field<double>(f[3 + i], lineno, "score");
      if (!(r.scores[i] >= 0.0 && r.scores[i] <= 1.0)) throw EraFormatError(lineno, "score outside [0, 1]");
    }
    r.fitness = parse_field<double>(f[3 + kDimensionCount], lineno, "fitness");
    const auto feas = f[4 + kDimensionCount];
    if (feas != "0" && feas != "1") throw EraFormatError(lineno, "feasible must be 0 or 1");
    r.feasible = feas == "1";
    data.add(r);
  }
  return data;
}

void save_csv(const EraDataset& data, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_csv(data, out);
}

EraDataset load_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  return read_csv(in);
}

// -------------------------------------------------------------- coverage

std::vector<DimensionPair> all_dimension_pairs() {
  std::vector<DimensionPair> out;
  for (std::size_t i = 0; i < kDimensionCount; ++i) {
    for (std::size_t j = i + 1; j < kDimensionCount; ++j) out.emplace_back(kAllDimensions[i], kAllDimensions[j]);
  }
  return out;
}

double pair_coverage(const EraDataset& data, Dimension a, Dimension b, int granularity) {
  const auto g = static_cast<std::size_t>(granularity);
  std::vector<std::uint8_t> hit(g * g, 0);
  for (const auto& r : data.records()) {
    if (!r.feasible) continue;
    hit[static_cast<std::size_t>(bin(r.score(a), granularity)) * g +
        static_cast<std::size_t>(bin(r.score(b), granularity))] = 1;
  }
  return 100.0 * static_cast<double>(std::count(hit.begin(), hit.end(), 1)) / static_cast<double>(g * g);
}

CoverageStats coverage(const EraDataset& data, std::optional<DimensionPair> pair, int granularity) {
  if (data.empty()) throw std::invalid_argument("coverage of an empty dataset");
  if (granularity < 1) throw std::invalid_argument("granularity must be positive");
  CoverageStats s;
  if (pair) s.pair_coverage = pair_coverage(data, pair->first, pair->second, granularity);
  const auto pairs = all_dimension_pairs();
  double sum = 0;
  for (const auto& [a, b] : pairs) sum += pair_coverage(data, a, b, granularity);
  s.all_dim_coverage = sum / static_cast<double>(pairs.size());

  const auto g = static_cast<std::size_t>(granularity);
  double single = 0;
  for (Dimension d : kAllDimensions) {
    std::vector<std::uint8_t> hit(g, 0);
    for (const auto& r : data.records()) {
      if (r.feasible) hit[static_cast<std::size_t>(bin(r.score(d), granularity))] = 1;
    }
    single += 100.0 * static_cast<double>(std::count(hit.begin(), hit.end(), 1)) / static_cast<double>(g);
  }
  s.single_dim_coverage = single / static_cast<double>(kDimensionCount);

  double fit = 0;
  for (const auto& r : data.records()) {
    if (!r.feasible) continue;
    fit += r.fitness;
    ++s.feasible_uniques;
  }
  s.avg_fitness = s.feasible_uniques ? fit / static_cast<double>(s.feasible_uniques) : 0.0;
  return s;
}

// ---------------------------------------------------------------- hexbin

double HexLattice::radius() noexcept { return 1.0 / (kColumns * std::sqrt(3.0)); }

int HexLattice::rows() noexcept { return static_cast<int>(std::ceil(1.0 / row_step())) + 1; }

std::pair<double, double> HexLattice::center(int col, int row) noexcept {
  const double offset = (row % 2 != 0) ? 0.5 : 0.0;
  return {(col + offset) * column_step(), row * row_step()};
}

std::pair<int, int> HexLattice::locate(double x, double y) noexcept {
  const int last_row = rows() - 1;
  const int base = std::clamp(static_cast<int>(std::floor(y / row_step())), 0, last_row);
  double best = std::numeric_limits<double>::infinity();
  std::pair<int, int> out{0, 0};
  for (int row = std::max(0, base - 1); row <= std::min(last_row, base + 1); ++row) {
    const double offset = (row % 2 != 0) ? 0.5 : 0.0;
    const int guess = static_cast<int>(std::lround(x / column_step() - offset));
    for (int col = std::max(0, guess - 1); col <= std::min(columns() - 1, guess + 1); ++col) {
      const auto [cx, cy] = center(col, row);
      const double d = (x - cx) * (x - cx) + (y - cy) * (y - cy);
      if (d < best) {
        best = d;
        out = {col, row};
      }
    }
  }
  return out;
}

std::vector<HexBin> hexbin_export(const EraDataset& data, Dimension x, Dimension y) {
  const int rows = HexLattice::rows();
  const int cols = HexLattice::columns();
  std::vector<HexBin> bins;
  bins.reserve(static_cast<std::size_t>(rows * cols));
  for (int row = 0; row < rows; ++row) {
    for (int col = 0; col < cols; ++col) {
      const auto [cx, cy] = HexLattice::center(col, row);
      bins.push_back({col, row, cx, cy, 0});
    }
  }
  for (const auto& r : data.records()) {
    const auto [col, row] = HexLattice::locate(r.score(x), r.score(y));
    ++bins[static_cast<std::size_t>(row * cols + col)].count;
  }
  return bins;
}

void write_hexbin_csv(const std::vector<HexBin>& bins, std::ostream& out) {
  out << "col,row,cx,cy,count\n";
  for (const auto& b : bins) {
    out << b.col << ',' << b.row << ',' << format_real(b.cx) << ',' << format_real(b.cy) << ',' << b.count << '\n';
  }
}

// ------------------------------------------------------ fitness relations

double pearson(const std::vector<double>& xs, const std::vector<double>& ys) {
  const std::size_t n = std::min(xs.size(), ys.size());
  if (n < 2) return 0.0;
  double mx = 0;
  double my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0;
  double sxx = 0;
  double syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx <= 0 || syy <= 0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

std::vector<DimensionFitness> fitness_by_dimension(const EraDataset& data) {
  if (data.empty()) throw std::invalid_argument("fitness_by_dimension of an empty dataset");
  std::vector<DimensionFitness> out;
  std::vector<double> fit;
  for (const auto& r : data.records()) {
    if (r.feasible) fit.push_back(r.fitness);
  }
  for (Dimension d : kAllDimensions) {
    DimensionFitness df;
    df.dim = d;
    std::vector<double> xs;
    for (const auto& r : data.records()) {
      if (!r.feasible) continue;
      df.points.emplace_back(r.score(d), r.fitness);
      xs.push_back(r.score(d));
    }
    df.pearson_r = pearson(xs, fit);
    out.push_back(std::move(df));
  }
  return out;
}

std::vector<BucketFitness> fitness_over_time(const EraDataset& data) {
  long last = -1;
  for (const auto& r : data.records()) {
    if (r.feasible) last = std::max(last, bucket_index(r.generation));
  }
  std::vector<BucketFitness> out(static_cast<std::size_t>(last + 1));
  std::vector<double> sum(out.size(), 0.0);
  std::vector<double> sq(out.size(), 0.0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i].bucket = static_cast<long>(i) * kBucketWidth;
    out[i].max = -std::numeric_limits<double>::infinity();
  }
  for (const auto& r : data.records()) {
    if (!r.feasible) continue;
    const auto b = static_cast<std::size_t>(bucket_index(r.generation));
    ++out[b].count;
    sum[b] += r.fitness;
    sq[b] += r.fitness * r.fitness;
    out[b].max = std::max(out[b].max, r.fitness);
  }
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i = 0; i < out.size(); ++i) {
    auto& b = out[i];
    if (b.count == 0) {
      b.mean = b.max = b.ci95 = nan;
      continue;
    }
    const double n = static_cast<double>(b.count);
    b.mean = sum[i] / n;
    const double var = b.count > 1 ? std::max(0.0, (sq[i] - n * b.mean * b.mean) / (n - 1)) : 0.0;
    b.ci95 = 1.96 * std::sqrt(var / n);
  }
  return out;
}

void write_fitness_over_time_csv(const std::vector<BucketFitness>& series, std::ostream& out) {
  out << "bucket,count,mean,max,ci95\n";
  for (const auto& b : series) {
    out << b.bucket << ',' << b.count << ',';
    if (b.count == 0) {
      out << ",,\n";
      continue;
    }
    out << format_real(b.mean) << ',' << format_real(b.max) << ',' << format_real(b.ci95) << '\n';
  }
}

}  // namespace roomqd
