#pragma once

#include <map>
#include <string>
#include <vector>

#include "qmix/model.hpp"

namespace qmix {

// S_n is the coefficient of e^{-i n delta_w t} in the rotating-frame <sigma_->,
// i.e. the component emitted at lab frequency w_d + n delta_w.
struct SpectrumTable {
  double delta_w = 0.0;
  std::map<int, cplx> entries;
  double t_start = 0.0;
  double t_end = 0.0;
  double floor = 0.0;
  std::vector<std::string> notes;

  cplx at(int n) const {
    auto it = entries.find(n);
    return it == entries.end() ? cplx{} : it->second;
  }
  double max_abs() const;
};

}  // namespace qmix
