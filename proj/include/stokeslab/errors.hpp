#pragma once

#include <stdexcept>
#include <string>

namespace stokeslab {

struct SingularPivot : std::runtime_error {
  explicit SingularPivot(const std::string& what) : std::runtime_error(what) {}
};

struct DegeneratePath : std::runtime_error {
  explicit DegeneratePath(const std::string& what) : std::runtime_error(what) {}
};

struct SplitFailure : std::runtime_error {
  explicit SplitFailure(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidSubsheaf : std::runtime_error {
  explicit InvalidSubsheaf(const std::string& what) : std::runtime_error(what) {}
};

struct DimensionMismatch : std::runtime_error {
  explicit DimensionMismatch(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace stokeslab
