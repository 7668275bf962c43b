#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "adscreen/adscreen.hpp"

namespace support {

namespace fs = std::filesystem;

inline const fs::path kDataDir = ADSCREEN_TEST_DATA_DIR;
inline const fs::path kFixtureDir = ADSCREEN_TEST_FIXTURE_DIR;

/// Fresh scratch directory under the build tree, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    path_ = fs::path(ADSCREEN_TEST_SCRATCH_DIR) / (tag + "_" + std::to_string(++counter));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  [[nodiscard]] const fs::path& path() const { return path_; }
  fs::path write(const std::string& name, const std::string& content) const {
    const fs::path p = path_ / name;
    fs::create_directories(p.parent_path());
    std::ofstream(p, std::ios::binary) << content;
    return p;
  }

 private:
  fs::path path_;
};

inline std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline adscreen::TokenSequence toks(std::initializer_list<const char*> words) {
  adscreen::TokenSequence s;
  for (const char* w : words) s.tokens.emplace_back(w);
  return s;
}

inline adscreen::TokenSequence repeat(const std::string& word, std::size_t n) {
  adscreen::TokenSequence s;
  s.tokens.assign(n, word);
  return s;
}

inline adscreen::TokenSequence distinct_words(std::size_t n, const std::string& prefix = "w") {
  adscreen::TokenSequence s;
  for (std::size_t i = 0; i < n; ++i) s.tokens.push_back(prefix + std::to_string(i));
  return s;
}

/// Labelled point cloud with its features and labels side by side.
struct Points {
  adscreen::Matrix x;
  std::vector<adscreen::Label> y;
};

inline adscreen::Label label_of(bool ad) { return ad ? adscreen::Label::ad : adscreen::Label::cn; }

/// Two Gaussian blobs with centres 4 apart along the diagonal; the closest
/// points are kept at least `margin` apart from the separating line.
inline Points blobs(std::size_t n, double margin, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  Points p{adscreen::Matrix(0, 2), {}};
  while (p.y.size() < n) {
    const bool ad = p.y.size() % 2 == 0;
    const double cx = ad ? 2.0 : -2.0;
    const double a = cx + noise(gen);
    const double b = cx + noise(gen);
    const double side = (a + b) / std::sqrt(2.0);  // signed distance from x + y = 0
    if ((ad ? side : -side) < margin / 2) continue;
    const double row[2] = {a, b};
    p.x.append_row(row);
    p.y.push_back(label_of(ad));
  }
  return p;
}

/// Inner disc (cn, radius < 1) and outer ring (ad, radius in [2, 3]).
inline Points circles(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> angle(0.0, 6.283185307179586);
  std::uniform_real_distribution<double> inner(0.0, 1.0);
  std::uniform_real_distribution<double> outer(2.0, 3.0);
  Points p{adscreen::Matrix(0, 2), {}};
  for (std::size_t i = 0; i < n; ++i) {
    const bool ad = i % 2 == 0;
    const double r = ad ? outer(gen) : inner(gen);
    const double t = angle(gen);
    const double row[2] = {r * std::cos(t), r * std::sin(t)};
    p.x.append_row(row);
    p.y.push_back(label_of(ad));
  }
  return p;
}

/// Uniform points in [-1, 1]^2 labelled by the sign of x1 * x2, with a small
/// exclusion band around both axes.
inline Points xor_points(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Points p{adscreen::Matrix(0, 2), {}};
  while (p.y.size() < n) {
    const double a = u(gen);
    const double b = u(gen);
    if (std::abs(a) < 0.05 || std::abs(b) < 0.05) continue;
    const double row[2] = {a, b};
    p.x.append_row(row);
    p.y.push_back(label_of(a * b > 0));
  }
  return p;
}

inline adscreen::Dataset as_dataset(const Points& p, const std::string& prefix = "x") {
  adscreen::Dataset d;
  for (std::size_t i = 0; i < p.y.size(); ++i) d.table.ids.push_back("r" + std::to_string(i));
  for (std::size_t j = 0; j < p.x.cols(); ++j) d.table.column_names.push_back(prefix + std::to_string(j));
  d.table.values = p.x;
  d.labels = p.y;
  return d;
}

inline double accuracy(const std::vector<adscreen::Label>& a, const std::vector<adscreen::Label>& b) {
  std::size_t hit = 0;
  for (std::size_t i = 0; i < a.size(); ++i) hit += a[i] == b[i];
  return static_cast<double>(hit) / static_cast<double>(a.size());
}

/// n rows, `informative` planted columns followed by noise columns. The
/// label is the sign of the planted sum plus Gaussian noise. Columns named
/// inf0.. and noise0..
inline adscreen::Dataset planted(std::size_t n, std::size_t informative, std::size_t noise,
                                 double label_noise, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> z(0.0, 1.0);
  adscreen::Dataset d;
  for (std::size_t j = 0; j < informative; ++j) d.table.column_names.push_back("inf" + std::to_string(j));
  for (std::size_t j = 0; j < noise; ++j) d.table.column_names.push_back("noise" + std::to_string(j));
  d.table.values = adscreen::Matrix(n, informative + noise);
  for (std::size_t i = 0; i < n; ++i) {
    d.table.ids.push_back("p" + std::to_string(i));
    double s = 0;
    for (std::size_t j = 0; j < informative + noise; ++j) {
      const double v = z(gen);
      d.table.values(i, j) = v;
      if (j < informative) s += v;
    }
    d.labels.push_back(label_of(s + label_noise * z(gen) > 0));
  }
  return d;
}

}  // namespace support
