#pragma once

#include <algorithm>
#include <exception>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "output.hpp"
#include "unruh/cavity.hpp"
#include "unruh/quadrature.hpp"

namespace unruh::cli {

struct FigureOptions {
  bool fast = false;
  int workers = 1;
  QuadratureConfig quad{};
};

struct Dataset {
  std::vector<Table> tables;
  nlohmann::json inputs = nlohmann::json::object();
  nlohmann::json results = nlohmann::json::object();
};

const std::vector<std::string>& figure_ids();
bool is_figure_id(const std::string& id);
Dataset make_figure(const std::string& id, const FigureOptions& opt);
Dataset make_table1(const FigureOptions& opt);

/// Item i goes to worker i % workers; results land at index i, so the
/// output is independent of the worker count. The first failure by index
/// is rethrown.
template <class T>
std::vector<T> parallel_map(std::size_t n, int workers, const std::function<T(std::size_t)>& f) {
  std::vector<T> out(n);
  std::vector<std::exception_ptr> err(n);
  auto run = [&](std::size_t w, std::size_t stride) {
    for (std::size_t i = w; i < n; i += stride) {
      try {
        out[i] = f(i);
      } catch (...) {
        err[i] = std::current_exception();
      }
    }
  };
  const auto stride = static_cast<std::size_t>(std::max(1, std::min<int>(workers, static_cast<int>(n))));
  if (stride == 1) {
    run(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < stride; ++w) pool.emplace_back(run, w, stride);
    for (auto& t : pool) t.join();
  }
  for (auto& e : err)
    if (e) std::rethrow_exception(e);
  return out;
}

// Building blocks shared by the figure generators.
namespace fig {

struct SingleRates {
  Estimate gamma0;
  Estimate gamma_a;
  Estimate ratio;
};
SingleRates single_rates(double alpha, const cavity::CavitySpec& cav, const QuadratureConfig& q);

/// gamma_ij for a uniform array, Toeplitz-filled from N pair evaluations.
struct GammaArray {
  Eigen::MatrixXd gamma;
  Eigen::MatrixXd error;
};
GammaArray gamma_array(double alpha, const cavity::CavitySpec& cav, int n, double d, const FigureOptions& opt);

nlohmann::json cavity_json(const cavity::CavitySpec& cav);

std::vector<double> logspace(double lo, double hi, int n);

}  // namespace fig

}  // namespace unruh::cli
