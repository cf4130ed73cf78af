#pragma once

#include <stdexcept>
#include <string>

namespace perils {

enum class errc {
  domain,         // argument outside its admissible range
  divergence,     // series does not converge for these parameters
  no_root,        // objective has no sign change on the admissible interval
  no_convergence, // iteration limit reached
  config,         // malformed configuration or scenario file
  data,           // malformed, missing, or degenerate data file
};

class error : public std::runtime_error {
public:
  error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const noexcept { return code_; }

private:
  errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& what) { throw error(code, what); }

} // namespace perils
