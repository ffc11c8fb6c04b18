#include "mesonet/learn/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "mesonet/io.hpp"

namespace mesonet::learn {

EvalReport make_report(std::vector<FoldResult> folds) {
  EvalReport report;
  for (const auto& f : folds) {
    report.labels.push_back(f.truth);
    report.labels.push_back(f.predicted);
  }
  std::sort(report.labels.begin(), report.labels.end());
  report.labels.erase(std::unique(report.labels.begin(), report.labels.end()),
                      report.labels.end());
  const auto k = static_cast<Eigen::Index>(report.labels.size());
  report.confusion = Eigen::MatrixXi::Zero(k, k);
  auto index_of = [&](const std::string& label) {
    return static_cast<Eigen::Index>(
        std::lower_bound(report.labels.begin(), report.labels.end(), label) -
        report.labels.begin());
  };
  for (const auto& f : folds) ++report.confusion(index_of(f.truth), index_of(f.predicted));
  const int total = report.confusion.sum();
  report.accuracy = total == 0 ? 0.0 : static_cast<double>(report.confusion.trace()) / total;
  report.folds = std::move(folds);
  return report;
}

EvalReport loocv(const Eigen::MatrixXd& x, std::span<const std::string> y,
                 std::span<const std::string> ids, const Trainer& trainer, unsigned jobs) {
  const auto n = static_cast<std::size_t>(x.rows());
  if (n < 2) throw std::invalid_argument("leave-one-out needs at least two rows");
  if (y.size() != n || ids.size() != n) throw std::invalid_argument("row, label and id counts differ");

  std::vector<FoldResult> folds(n);
  auto run_fold = [&](std::size_t held_out) {
    Eigen::MatrixXd train(x.rows() - 1, x.cols());
    std::vector<std::string> labels;
    labels.reserve(n - 1);
    Eigen::Index r = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == held_out) continue;
      train.row(r++) = x.row(static_cast<Eigen::Index>(i));
      labels.push_back(y[i]);
    }
    Standardizer scaler = Standardizer::fit(train);
    TrainedModel model = trainer(scaler.apply(train), labels);
    Eigen::MatrixXd test = scaler.apply(x.row(static_cast<Eigen::Index>(held_out)));
    folds[held_out] = FoldResult{ids[held_out], y[held_out],
                                 model.predict(test.row(0).transpose())};
  };

  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(n)));
  if (jobs == 1) {
    for (std::size_t i = 0; i < n; ++i) run_fold(i);
  } else {
    std::vector<std::exception_ptr> errors(jobs);
    {
      std::vector<std::jthread> workers;
      for (unsigned t = 0; t < jobs; ++t) {
        workers.emplace_back([&, t] {
          try {
            for (std::size_t i = t; i < n; i += jobs) run_fold(i);
          } catch (...) {
            errors[t] = std::current_exception();
          }
        });
      }
    }
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  return make_report(std::move(folds));
}

EvalReport loocv(const DatasetMatrix& data, const Trainer& trainer, unsigned jobs) {
  return loocv(data.values, data.labels, data.book_ids, trainer, jobs);
}

PairwiseMatrix pairwise_matrix(const DatasetMatrix& data, const Trainer& trainer, unsigned jobs) {
  PairwiseMatrix out;
  out.authors = data.labels;
  std::sort(out.authors.begin(), out.authors.end());
  out.authors.erase(std::unique(out.authors.begin(), out.authors.end()), out.authors.end());
  if (out.authors.size() < 2) throw std::invalid_argument("pairwise comparison needs two authors");
  const auto k = static_cast<Eigen::Index>(out.authors.size());
  out.accuracy = Eigen::MatrixXd::Constant(k, k, std::numeric_limits<double>::quiet_NaN());
  for (Eigen::Index a = 0; a < k; ++a) {
    for (Eigen::Index b = a + 1; b < k; ++b) {
      std::vector<std::string> pair{out.authors[static_cast<std::size_t>(a)],
                                    out.authors[static_cast<std::size_t>(b)]};
      DatasetMatrix subset = select_labels(data, pair);
      double acc = loocv(subset, trainer, jobs).accuracy;
      out.accuracy(a, b) = acc;
      out.accuracy(b, a) = acc;
    }
  }
  return out;
}

void write_report(std::ostream& out, const EvalReport& report, std::string_view title) {
  out << title << '\n';
  out << "instances: " << report.folds.size() << '\n';
  out << "accuracy: " << io::format_double(report.accuracy) << '\n';
  out << "chance: "
      << io::format_double(report.labels.empty() ? 0.0 : 1.0 / static_cast<double>(report.labels.size()))
      << '\n';
  out << "book_id\ttrue\tpredicted\n";
  for (const auto& f : report.folds) {
    out << f.book_id << '\t' << f.truth << '\t' << f.predicted << '\n';
  }
}

void write_confusion_csv(std::ostream& out, const EvalReport& report) {
  out << "true\\predicted";
  for (const auto& l : report.labels) out << ',' << io::csv_field(l);
  out << '\n';
  for (std::size_t r = 0; r < report.labels.size(); ++r) {
    out << io::csv_field(report.labels[r]);
    for (std::size_t c = 0; c < report.labels.size(); ++c) {
      out << ',' << report.confusion(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }
    out << '\n';
  }
}

void write_pairwise_csv(std::ostream& out, const PairwiseMatrix& matrix) {
  out << "author";
  for (const auto& a : matrix.authors) out << ',' << io::csv_field(a);
  out << '\n';
  for (std::size_t r = 0; r < matrix.authors.size(); ++r) {
    out << io::csv_field(matrix.authors[r]);
    for (std::size_t c = 0; c < matrix.authors.size(); ++c) {
      double v = matrix.accuracy(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
      out << ',';
      if (!std::isnan(v)) out << io::format_double(v);
    }
    out << '\n';
  }
}

}  // namespace mesonet::learn
