#include "mesonet/features.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "mesonet/error.hpp"
#include "mesonet/io.hpp"

namespace mesonet {
namespace {

std::vector<double> sorted_ks(const FeatureGrid& grid) {
  std::vector<double> ks = grid.k_values;
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  return ks;
}

}  // namespace

std::string k_label(double k) { return "k" + io::format_double(k); }

std::vector<std::string> feature_names(const FeatureGrid& grid) {
  std::vector<std::string> names;
  for (double k : sorted_ks(grid)) {
    const std::string prefix = k_label(k) + ".";
    for (auto m : grid.measures) {
      const std::string base = prefix + std::string(measure_name(m));
      if (m != NodeMeasure::degree) names.push_back(base + ".mean");
      names.push_back(base + ".std");
      names.push_back(base + ".skewness");
    }
    if (grid.assortativity) names.push_back(prefix + "assortativity");
  }
  return names;
}

FeatureVector book_features(const std::map<double, NodeMeasureTable>& tables,
                            const FeatureGrid& grid, std::string book_id,
                            std::string author) {
  FeatureVector fv;
  fv.book_id = std::move(book_id);
  fv.author = std::move(author);
  auto names = feature_names(grid);
  fv.entries.reserve(names.size());
  std::size_t next = 0;
  auto emit = [&](double value) { fv.entries.emplace_back(names[next++], value); };

  for (double k : sorted_ks(grid)) {
    auto it = tables.find(k);
    if (it == tables.end()) {
      throw Error("no measurements for <k> = " + io::format_double(k) +
                  (fv.book_id.empty() ? "" : " in book '" + fv.book_id + "'"));
    }
    const NodeMeasureTable& table = it->second;
    for (auto m : grid.measures) {
      DistributionStats s = aggregate(table.column(m));
      if (m != NodeMeasure::degree) emit(s.mean);
      emit(s.std);
      emit(s.skewness);
    }
    if (grid.assortativity) emit(table.assortativity.value);
  }
  return fv;
}

DatasetMatrix assemble_dataset(std::span<const FeatureVector> books) {
  DatasetMatrix out;
  if (books.empty()) return out;
  for (const auto& [name, value] : books.front().entries) out.feature_names.push_back(name);
  out.values.resize(static_cast<Eigen::Index>(books.size()),
                    static_cast<Eigen::Index>(out.feature_names.size()));
  for (std::size_t r = 0; r < books.size(); ++r) {
    const auto& book = books[r];
    if (book.entries.size() != out.feature_names.size()) {
      throw Error("book '" + book.book_id + "' has a different feature layout");
    }
    for (std::size_t c = 0; c < book.entries.size(); ++c) {
      if (book.entries[c].first != out.feature_names[c]) {
        throw Error("book '" + book.book_id + "' has a different feature layout");
      }
      if (!std::isfinite(book.entries[c].second)) {
        throw Error("book '" + book.book_id + "' has a non-finite value for " +
                    book.entries[c].first);
      }
      out.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = book.entries[c].second;
    }
    out.book_ids.push_back(book.book_id);
    out.labels.push_back(book.author);
  }
  return out;
}

Standardizer Standardizer::fit(const Eigen::MatrixXd& x) {
  if (x.rows() < 2) throw std::invalid_argument("standardization needs at least two rows");
  Standardizer s;
  s.mean = x.colwise().mean();
  s.scale.resize(x.cols());
  for (Eigen::Index c = 0; c < x.cols(); ++c) {
    auto col = x.col(c);
    if (col.minCoeff() == col.maxCoeff()) {
      s.mean(c) = col(0);
      s.scale(c) = 0.0;
    } else {
      s.scale(c) = std::sqrt((col.array() - s.mean(c)).square().mean());
    }
  }
  return s;
}

Eigen::MatrixXd Standardizer::apply(const Eigen::MatrixXd& x) const {
  if (x.cols() != mean.size()) throw std::invalid_argument("column count mismatch");
  Eigen::MatrixXd out(x.rows(), x.cols());
  for (Eigen::Index c = 0; c < x.cols(); ++c) {
    if (scale(c) == 0.0) {
      out.col(c).setZero();
    } else {
      out.col(c) = (x.col(c).array() - mean(c)) / scale(c);
    }
  }
  return out;
}

DatasetMatrix standardize(const DatasetMatrix& matrix) {
  DatasetMatrix out = matrix;
  Standardizer s = Standardizer::fit(matrix.values);
  out.values = s.apply(matrix.values);
  out.standardization = std::move(s);
  return out;
}

DatasetMatrix select_columns(const DatasetMatrix& matrix, std::string_view prefix) {
  std::vector<Eigen::Index> keep;
  DatasetMatrix out;
  out.book_ids = matrix.book_ids;
  out.labels = matrix.labels;
  for (std::size_t c = 0; c < matrix.feature_names.size(); ++c) {
    if (matrix.feature_names[c].rfind(prefix, 0) == 0) {
      keep.push_back(static_cast<Eigen::Index>(c));
      out.feature_names.push_back(matrix.feature_names[c]);
    }
  }
  out.values.resize(matrix.values.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t i = 0; i < keep.size(); ++i) {
    out.values.col(static_cast<Eigen::Index>(i)) = matrix.values.col(keep[i]);
  }
  return out;
}

DatasetMatrix select_labels(const DatasetMatrix& matrix, std::span<const std::string> labels) {
  std::vector<Eigen::Index> keep;
  DatasetMatrix out;
  out.feature_names = matrix.feature_names;
  for (std::size_t r = 0; r < matrix.labels.size(); ++r) {
    if (std::find(labels.begin(), labels.end(), matrix.labels[r]) != labels.end()) {
      keep.push_back(static_cast<Eigen::Index>(r));
      out.book_ids.push_back(matrix.book_ids[r]);
      out.labels.push_back(matrix.labels[r]);
    }
  }
  out.values.resize(static_cast<Eigen::Index>(keep.size()), matrix.values.cols());
  for (std::size_t i = 0; i < keep.size(); ++i) {
    out.values.row(static_cast<Eigen::Index>(i)) = matrix.values.row(keep[i]);
  }
  return out;
}

void write_feature_csv(std::ostream& out, const DatasetMatrix& matrix) {
  out << "book_id,author";
  for (const auto& name : matrix.feature_names) out << ',' << io::csv_field(name);
  out << '\n';
  for (std::size_t r = 0; r < matrix.rows(); ++r) {
    out << io::csv_field(matrix.book_ids[r]) << ',' << io::csv_field(matrix.labels[r]);
    for (std::size_t c = 0; c < matrix.cols(); ++c) {
      out << ',' << io::format_double(matrix.values(static_cast<Eigen::Index>(r),
                                                    static_cast<Eigen::Index>(c)));
    }
    out << '\n';
  }
}

DatasetMatrix read_feature_csv(std::istream& in) {
  DatasetMatrix out;
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::vector<double>> rows;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    auto t = io::trim(line);
    if (t.empty()) continue;
    std::vector<std::string> fields;
    try {
      fields = io::split_csv_line(t);
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), line_no);
    }
    if (!have_header) {
      have_header = true;
      if (fields.size() < 2 || fields[0] != "book_id" || fields[1] != "author") {
        throw ParseError("expected header starting with 'book_id,author'", line_no);
      }
      out.feature_names.assign(fields.begin() + 2, fields.end());
      continue;
    }
    if (fields.size() != out.feature_names.size() + 2) {
      throw ParseError("wrong field count", line_no);
    }
    out.book_ids.push_back(fields[0]);
    out.labels.push_back(fields[1]);
    std::vector<double> row;
    row.reserve(out.feature_names.size());
    for (std::size_t c = 2; c < fields.size(); ++c) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(fields[c], &used));
        if (used != fields[c].size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw ParseError("bad number '" + fields[c] + "'", line_no);
      }
    }
    rows.push_back(std::move(row));
  }
  if (!have_header) throw ParseError("empty feature file", 1);
  out.values.resize(static_cast<Eigen::Index>(rows.size()),
                    static_cast<Eigen::Index>(out.feature_names.size()));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c)
      out.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
  return out;
}

}  // namespace mesonet
