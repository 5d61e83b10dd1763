#include "clogfuse/fusion/isotonic.hpp"

#include <algorithm>

namespace clogfuse::fusion {

void pool_adjacent_violators(std::span<double> y) {
  struct Block {
    double sum;
    std::size_t count;
    double mean() const { return sum / static_cast<double>(count); }
  };
  std::vector<Block> blocks;
  blocks.reserve(y.size());
  for (double v : y) {
    blocks.push_back({v, 1});
    while (blocks.size() > 1 && blocks[blocks.size() - 2].mean() > blocks.back().mean()) {
      const Block top = blocks.back();
      blocks.pop_back();
      blocks.back().sum += top.sum;
      blocks.back().count += top.count;
    }
  }
  std::size_t k = 0;
  for (const auto& b : blocks) {
    // Untouched singletons keep their exact value.
    const double m = b.count == 1 ? b.sum : b.mean();
    for (std::size_t c = 0; c < b.count; ++c) y[k++] = m;
  }
}

void project_physical(Eigen::Ref<Eigen::VectorXd> values, Eigen::Ref<Eigen::VectorXd> pre_cleaning,
                      const std::vector<sim::CleaningMark>& marks) {
  const auto T = static_cast<std::size_t>(values.size());
  std::vector<double> seq;
  std::size_t seg_begin = 0;
  for (std::size_t c = 0; c <= marks.size(); ++c) {
    const bool closed = c < marks.size();
    const std::size_t seg_end = closed ? marks[c].index : T;
    // After a cleaning the segment's first value is pinned by the previous
    // pre-cleaning value and acts as the lower bound.
    const std::size_t first_free = c == 0 ? 0 : seg_begin + 1;
    const double lower = c == 0 ? 0.0 : values[static_cast<Eigen::Index>(seg_begin)];

    seq.clear();
    for (std::size_t j = first_free; j < seg_end; ++j) seq.push_back(values[static_cast<Eigen::Index>(j)]);
    if (closed) seq.push_back(pre_cleaning[static_cast<Eigen::Index>(c)]);
    pool_adjacent_violators(seq);
    for (double& v : seq) v = std::clamp(v, lower, 1.0);

    std::size_t k = 0;
    for (std::size_t j = first_free; j < seg_end; ++j) values[static_cast<Eigen::Index>(j)] = seq[k++];
    if (closed) {
      const auto cc = static_cast<Eigen::Index>(c);
      pre_cleaning[cc] = seq[k];
      values[static_cast<Eigen::Index>(seg_end)] = (1.0 - marks[c].efficiency) * pre_cleaning[cc];
    }
    seg_begin = seg_end;
  }
}

}  // namespace clogfuse::fusion
