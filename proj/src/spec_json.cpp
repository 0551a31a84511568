#include <cmath>

#include "json.hpp"
#include "zenoforge/lindblad.hpp"

namespace zenoforge {

namespace {

using nlohmann::json;

json matrix_to_json(const Mat& m) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) arr.push_back({m(i, j).real(), m(i, j).imag()});
  return arr;
}

Mat matrix_from_json(const json& arr, int d, const char* what) {
  if (!arr.is_array() || arr.size() != static_cast<std::size_t>(d) * d) {
    throw std::invalid_argument(std::string("spec JSON: '") + what + "' must hold d*d [re,im] pairs");
  }
  Mat m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const json& e = arr[static_cast<std::size_t>(i * d + j)];
      if (!e.is_array() || e.size() != 2) throw std::invalid_argument(std::string("spec JSON: malformed entry in '") + what + "'");
      m(i, j) = cplx(e[0].get<double>(), e[1].get<double>());
    }
  return m;
}

}  // namespace

std::string spec_to_json(const LindbladSpec& spec) {
  json j;
  j["dims"] = spec.space().factor_dims();
  j["hamiltonian"] = matrix_to_json(spec.hamiltonian().matrix());
  j["terms"] = json::array();
  for (const auto& t : spec.terms()) j["terms"].push_back({{"rate", t.rate}, {"op", matrix_to_json(t.op.matrix())}});
  return j.dump();
}

LindbladSpec spec_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("spec JSON: ") + e.what());
  }
  if (!j.contains("dims")) throw std::invalid_argument("spec JSON: missing 'dims'");
  const HilbertSpace space(j.at("dims").get<std::vector<int>>());
  const int d = space.dim();
  Operator h = j.contains("hamiltonian") ? Operator(space, matrix_from_json(j["hamiltonian"], d, "hamiltonian"))
                                         : Operator::zero(space);
  std::vector<LindbladTerm> terms;
  if (j.contains("terms")) {
    for (const auto& t : j["terms"]) {
      terms.push_back({t.at("rate").get<double>(), Operator(space, matrix_from_json(t.at("op"), d, "op"))});
    }
  }
  return {std::move(h), std::move(terms)};
}

}  // namespace zenoforge
