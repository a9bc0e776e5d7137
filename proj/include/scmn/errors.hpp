#ifndef SCMN_ERRORS_HPP
#define SCMN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace scmn {

// Requested equation has no solution in the admissible range
// (e.g. a SIR limit for a rate the channel never attains).
class no_solution_error : public std::runtime_error {
  public:
    explicit no_solution_error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed or inconsistent channel configuration / CLI parameters.
class validation_error : public std::runtime_error {
  public:
    explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

// Filesystem failures while reading configs or writing outputs.
class io_error : public std::runtime_error {
  public:
    explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace scmn

#endif
