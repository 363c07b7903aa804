#include "anita/dataio.hpp"

#include <algorithm>
#include <cassert>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "anita/kernels.hpp"
#include "anita/rng.hpp"

namespace anita {

SparseDataset::SparseDataset(
    std::size_t n_features,
    std::vector<std::vector<std::pair<std::uint32_t, double>>> rows,
    std::vector<double> labels)
    : n_features_(n_features) {
  if (rows.size() != labels.size())
    throw std::invalid_argument("dataset: rows/labels size mismatch");
  row_start_.reserve(rows.size() + 1);
  row_start_.push_back(0);
  for (const auto& row : rows) {
    std::uint32_t prev = 0;
    bool first = true;
    for (const auto& [idx, val] : row) {
      if (idx >= n_features_)
        throw std::invalid_argument("dataset: feature index out of range");
      if (!first && idx <= prev)
        throw std::invalid_argument("dataset: indices not strictly increasing");
      if (val == 0.0)
        throw std::invalid_argument("dataset: explicit zero stored");
      indices_.push_back(idx);
      values_.push_back(val);
      prev = idx;
      first = false;
    }
    row_start_.push_back(indices_.size());
  }
  for (double b : labels)
    if (b != 1.0 && b != -1.0)
      throw std::invalid_argument("dataset: label not +-1");
  labels_ = std::move(labels);
}

SparseDataset::Row SparseDataset::row(std::size_t i) const {
  std::size_t a = row_start_[i], b = row_start_[i + 1];
  return {std::span(indices_).subspan(a, b - a),
          std::span(values_).subspan(a, b - a)};
}

double SparseDataset::row_squared_norm(std::size_t i) const {
  auto r = row(i);
  double s = 0.0;
  for (double v : r.val) s += v * v;
  return s;
}

double SparseDataset::max_row_squared_norm() const {
  double m = 0.0;
  for (std::size_t i = 0; i < n_samples(); ++i)
    m = std::max(m, row_squared_norm(i));
  return m;
}

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what),
      line_(line) {}

namespace {

double parse_double_token(std::string_view tok, std::size_t line_no,
                          const char* what) {
  std::string_view body = tok;
  if (!body.empty() && body.front() == '+') body.remove_prefix(1);
  double out = 0.0;
  auto [p, ec] = std::from_chars(body.data(), body.data() + body.size(), out);
  if (body.empty() || ec != std::errc{} || p != body.data() + body.size())
    throw ParseError(line_no, std::string("bad ") + what + " '" +
                                  std::string(tok) + "'");
  return out;
}

std::uint64_t parse_index_token(std::string_view tok, std::size_t line_no) {
  std::uint64_t out = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  if (ec != std::errc{} || p != tok.data() + tok.size())
    throw ParseError(line_no,
                     "bad feature index '" + std::string(tok) + "'");
  return out;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace

SparseDataset parse_libsvm(std::string_view text) {
  if (text.empty()) throw ParseError(0, "empty input");

  std::vector<std::vector<std::pair<std::uint32_t, double>>> rows;
  std::vector<double> labels;
  std::uint32_t max_index = 0;  // 1-based max seen
  bool any_line = false;

  std::size_t pos = 0, line_no = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line = (eol == std::string_view::npos)
                                ? text.substr(pos)
                                : text.substr(pos, eol - pos);
    pos = (eol == std::string_view::npos) ? text.size() + 1 : eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    auto toks = split_ws(line);
    if (toks.empty()) continue;  // blank line (e.g. trailing newline)
    any_line = true;

    double raw = parse_double_token(toks[0], line_no, "label");
    labels.push_back(raw <= 0.0 ? -1.0 : 1.0);

    std::vector<std::pair<std::uint32_t, double>> row;
    std::uint64_t prev = 0;
    for (std::size_t t = 1; t < toks.size(); ++t) {
      std::string_view tok = toks[t];
      std::size_t colon = tok.find(':');
      if (colon == std::string_view::npos)
        throw ParseError(line_no, "missing ':' in '" + std::string(tok) + "'");
      std::uint64_t idx1 = parse_index_token(tok.substr(0, colon), line_no);
      if (idx1 < 1) throw ParseError(line_no, "feature index < 1");
      if (idx1 <= prev)
        throw ParseError(line_no, "non-increasing indices");
      if (idx1 > 0xffffffffULL)
        throw ParseError(line_no, "feature index too large");
      double val =
          parse_double_token(tok.substr(colon + 1), line_no, "feature value");
      if (val != 0.0) row.emplace_back(std::uint32_t(idx1 - 1), val);
      prev = idx1;
      max_index = std::max<std::uint32_t>(max_index, std::uint32_t(idx1));
    }
    rows.push_back(std::move(row));
  }
  if (!any_line) throw ParseError(0, "empty input");

  return SparseDataset(max_index, std::move(rows), std::move(labels));
}

SparseDataset load_libsvm(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + file.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_libsvm(buf.str());
}

std::string serialize_libsvm(const SparseDataset& ds) {
  std::string out;
  char num[64];
  for (std::size_t i = 0; i < ds.n_samples(); ++i) {
    out += ds.label(i) > 0 ? "+1" : "-1";
    auto r = ds.row(i);
    for (std::size_t k = 0; k < r.nnz(); ++k) {
      std::snprintf(num, sizeof num, " %u:%.17g", r.idx[k] + 1, r.val[k]);
      out += num;
    }
    out += '\n';
  }
  return out;
}

SparseDataset normalize_rows(const SparseDataset& ds) {
  std::vector<std::vector<std::pair<std::uint32_t, double>>> rows(
      ds.n_samples());
  std::vector<double> labels(ds.labels().begin(), ds.labels().end());
  for (std::size_t i = 0; i < ds.n_samples(); ++i) {
    auto r = ds.row(i);
    double norm = std::sqrt(ds.row_squared_norm(i));
    double inv = norm > 0.0 ? 1.0 / norm : 0.0;
    for (std::size_t k = 0; k < r.nnz(); ++k)
      rows[i].emplace_back(r.idx[k], norm > 0.0 ? r.val[k] * inv : r.val[k]);
  }
  return SparseDataset(ds.n_features(), std::move(rows), std::move(labels));
}

namespace {

// Box-Muller, cosine branch only; two uniforms per draw keeps the stream
// layout independent of how many normals a caller consumes.
double standard_normal(SplitMix64& rng) {
  double u1 = 1.0 - rng.next_double();  // (0, 1]
  double u2 = rng.next_double();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace

SparseDataset generate_synthetic(const SynthConfig& cfg,
                                 std::vector<double>* w_true_out) {
  if (cfg.density <= 0.0 || cfg.density > 1.0)
    throw std::invalid_argument("synthetic: density must be in (0,1]");
  if (cfg.label_noise < 0.0 || cfg.label_noise > 1.0)
    throw std::invalid_argument("synthetic: label_noise must be in [0,1]");
  if (cfg.n_samples == 0 || cfg.n_features == 0)
    throw std::invalid_argument("synthetic: empty shape");

  SplitMix64 rng(cfg.seed);

  std::vector<double> w_true(cfg.n_features);
  for (double& w : w_true) w = standard_normal(rng);

  std::vector<std::vector<std::pair<std::uint32_t, double>>> rows(
      cfg.n_samples);
  std::vector<double> labels(cfg.n_samples);
  for (std::size_t i = 0; i < cfg.n_samples; ++i) {
    double margin = 0.0;
    for (std::uint32_t k = 0; k < cfg.n_features; ++k) {
      if (rng.next_double() < cfg.density) {
        double v = standard_normal(rng);
        if (v != 0.0) {
          rows[i].emplace_back(k, v);
          margin += v * w_true[k];
        }
      }
    }
    double b = margin >= 0.0 ? 1.0 : -1.0;
    if (rng.next_double() < cfg.label_noise) b = -b;
    labels[i] = b;
  }

  if (w_true_out) *w_true_out = std::move(w_true);
  SparseDataset ds(cfg.n_features, std::move(rows), std::move(labels));
  return normalize_rows(ds);
}

}  // namespace anita
