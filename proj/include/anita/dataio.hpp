#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace anita {

// Row-sparse feature matrix with +-1 labels. Feature indices are 0-based
// internally, strictly increasing within a row, with no explicit zeros.
// Immutable once built; safe to share read-only across concurrent runs.
class SparseDataset {
 public:
  struct Row {
    std::span<const std::uint32_t> idx;
    std::span<const double> val;
    std::size_t nnz() const { return idx.size(); }
  };

  SparseDataset() = default;
  SparseDataset(std::size_t n_features,
                std::vector<std::vector<std::pair<std::uint32_t, double>>> rows,
                std::vector<double> labels);

  std::size_t n_samples() const { return labels_.size(); }
  std::size_t n_features() const { return n_features_; }
  Row row(std::size_t i) const;
  double label(std::size_t i) const { return labels_[i]; }
  std::span<const double> labels() const { return labels_; }
  std::size_t total_nnz() const { return values_.size(); }

  double row_squared_norm(std::size_t i) const;
  double max_row_squared_norm() const;

  bool operator==(const SparseDataset&) const = default;

 private:
  std::size_t n_features_ = 0;
  std::vector<std::size_t> row_start_;  // CSR offsets, size n_samples()+1
  std::vector<std::uint32_t> indices_;
  std::vector<double> values_;
  std::vector<double> labels_;
};

struct SynthConfig {
  std::size_t n_samples = 0;
  std::size_t n_features = 0;
  std::uint64_t seed = 0;
  double label_noise = 0.0;  // in [0,1]
  double density = 1.0;      // in (0,1]
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// LIBSVM text: one sample per line, `<label> <idx>:<val> ...`, 1-based
// strictly increasing indices. Labels map by sign: value <= 0 -> -1, else +1.
// The feature dimension is the largest index seen. LF and CRLF both accepted.
SparseDataset parse_libsvm(std::string_view text);
SparseDataset load_libsvm(const std::filesystem::path& file);

// Inverse of parse_libsvm (1-based indices, 17-significant-digit values).
std::string serialize_libsvm(const SparseDataset& ds);

// Rescales every nonzero row to unit Euclidean norm; zero rows unchanged.
SparseDataset normalize_rows(const SparseDataset& ds);

// Deterministic function of cfg: standard-normal features at a `density`
// fraction of positions, labels from a random separator with sign flips at
// rate `label_noise`, rows normalized. The separator is written to
// w_true_out when given.
SparseDataset generate_synthetic(const SynthConfig& cfg,
                                 std::vector<double>* w_true_out = nullptr);

}  // namespace anita
