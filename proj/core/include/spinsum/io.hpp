#pragma once

#include "spinsum/algebra.hpp"
#include "spinsum/eval.hpp"
#include "spinsum/spin.hpp"
#include "spinsum/surface.hpp"
#include "spinsum/tft.hpp"

#include <stdexcept>
#include <string>

namespace spinsum {

// Malformed or semantically invalid input. what() carries the diagnostics.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// {"vertices": V (optional), "edges": [{"src","dst"}],
//  "triangles": [[{"edge","side": "L"|"R"} x3]],
//  "boundaries": [[{"edge","position"} x3]]}
// Loading runs validate() and rejects invalid complexes.
MarkedTriangulation surface_from_json(const std::string& text);
std::string surface_to_json(const MarkedTriangulation& tri);

// {"0": 1, "1": -1, ...}; a plain list is accepted too.
Signs signs_from_json(const std::string& text, int num_edges);
std::string signs_to_json(const Signs& s);

// {"field": "Q" | {"Fp": p}, "dim", "parity", "mu": [[k,i,j,value]], "eta", "eps"}
// Values are integers or "p/q" strings.
GradedFrobeniusAlgebra algebra_from_json(const std::string& text);
std::string algebra_to_json(const GradedFrobeniusAlgebra& A);

std::string scalar_json_text(const Scalar& s);

std::string amplitude_to_json(const Amplitude& a);
std::string predicates_to_json(const PredicateReport& p);

std::string read_file(const std::string& path);

}  // namespace spinsum
