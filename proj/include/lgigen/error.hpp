//
// lgigen - text-based generative models for sparse graphs
// SPDX-License-Identifier: Apache-2.0
//

#ifndef LGIGEN_ERROR_HPP_
#define LGIGEN_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace lgigen {

class Error: public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Bad graph construction or operation arguments (out-of-range endpoints,
// self-loops, non-bijective permutations, infeasible generator settings).
class GraphError: public Error {
public:
  using Error::Error;
};

class ParseError: public Error {
public:
  using Error::Error;
};

// A graph that cannot be written in the requested text format.
class EncodeError: public Error {
public:
  using Error::Error;
};

class MetricError: public Error {
public:
  using Error::Error;
};

class CheckpointError: public Error {
public:
  using Error::Error;
};

class CheckpointCorrupt: public CheckpointError {
public:
  using CheckpointError::CheckpointError;
};

class CheckpointVersionError: public CheckpointError {
public:
  using CheckpointError::CheckpointError;
};

}  // namespace lgigen

#endif  // LGIGEN_ERROR_HPP_
