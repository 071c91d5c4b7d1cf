// Copyright 2026 The mlsum Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MLSUM_ERRORS_HPP_
#define MLSUM_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mlsum {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// corpus_io
class CorpusFormatError : public Error {
 public:
  using Error::Error;
};
class IoError : public Error {
 public:
  using Error::Error;
};
class ClusterTooSmall : public Error {
 public:
  using Error::Error;
};
class EmptyCorpus : public Error {
 public:
  using Error::Error;
};

// text_pipeline / vectorizer
class DegenerateCluster : public Error {
 public:
  using Error::Error;
};

// graph
class EmptyGraph : public Error {
 public:
  using Error::Error;
};
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

// centrality
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, std::size_t iterations)
      : Error(what), iterations_(iterations) {}
  std::size_t iterations() const noexcept { return iterations_; }

 private:
  std::size_t iterations_;
};
class SingularMatrix : public Error {
 public:
  using Error::Error;
};

// summarizer
class InvalidInput : public Error {
 public:
  using Error::Error;
};
class EmptySummary : public Error {
 public:
  using Error::Error;
};

// evaluation
class InvalidReference : public Error {
 public:
  using Error::Error;
};

}  // namespace mlsum

#endif  // MLSUM_ERRORS_HPP_
