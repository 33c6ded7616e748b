#ifndef ODT_ERROR_HPP
#define ODT_ERROR_HPP

#include <stdexcept>
#include <string>
#include <utility>

namespace odt {

/// Runtime error carrying a stable machine-readable code ("PARSE-ERROR",
/// "BUDGET-EXCEEDED", ...) next to the human-readable message. The CLI maps
/// codes to exit statuses; tests match on codes instead of message text.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

}  // namespace odt

#endif  // ODT_ERROR_HPP
