#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace semmap {

/// Failure raised by a pipeline stage. `module()` names the stage
/// ("corpus_io", "vsm", ...) so callers can report where a run broke.
class Error : public std::runtime_error {
public:
    Error(std::string module, const std::string& message);

    [[nodiscard]] auto module() const noexcept -> const std::string& { return module_; }

private:
    std::string module_;
};

/// Non-fatal warnings collected in emission order.
struct Diagnostics {
    std::vector<std::string> warnings;

    void warn(std::string_view module, std::string_view message);
    void append(const Diagnostics& other);
};

}  // namespace semmap
