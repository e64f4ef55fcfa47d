#pragma once

#include <memory>
#include <vector>

#include "kci/data.hpp"
#include "kci/graph.hpp"
#include "kci/test_config.hpp"

namespace kci {

/// Conditional-independence oracle for the PC algorithm: p-value of
/// "x independent of y given z" on the data.
class CiOracle {
 public:
  virtual ~CiOracle() = default;
  virtual double p_value(const DataMatrix& data, int x, int y,
                         const std::vector<int>& z) const = 0;
  virtual std::string name() const = 0;
};

class KciOracle : public CiOracle {
 public:
  explicit KciOracle(TestConfig config = {}) : config_(config) {}
  double p_value(const DataMatrix& data, int x, int y,
                 const std::vector<int>& z) const override;
  std::string name() const override { return "kci"; }

 private:
  TestConfig config_;
};

class PcorrOracle : public CiOracle {
 public:
  double p_value(const DataMatrix& data, int x, int y,
                 const std::vector<int>& z) const override;
  std::string name() const override { return "pcorr"; }
};

struct Skeleton {
  std::vector<std::vector<bool>> adjacency;
  SepsetMap sepsets;
  long queries = 0;
};

/// PC-stable skeleton phase: level-synchronized deletions, lexicographic
/// subset order, first separating set recorded.
Skeleton pc_skeleton(const DataMatrix& data, const CiOracle& oracle, double alpha,
                     int max_cond = -1);

/// Skeleton phase followed by v-structure orientation and Meek closure.
Cpdag run_pc(const DataMatrix& data, const CiOracle& oracle, double alpha,
             int max_cond = -1);

}  // namespace kci
