#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace dsmeta {

// Fatal input problems (missing files, malformed snapshots). Maps to exit 1.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

// Configuration problems (unreadable/invalid config files). Maps to exit 2.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

enum class Severity { Info, Warning };

// Non-fatal, per-page/per-record issues. The pipeline never throws on these;
// it records them and keeps going.
struct Diagnostic {
    Severity severity = Severity::Warning;
    std::string stage;    // "extract", "normalize", ...
    std::string context;  // page URL, file path, value excerpt
    std::string message;
};

class Diagnostics {
public:
    void add(Severity sev, std::string stage, std::string context, std::string message) {
        items_.push_back({sev, std::move(stage), std::move(context), std::move(message)});
    }
    void warn(std::string stage, std::string context, std::string message) {
        add(Severity::Warning, std::move(stage), std::move(context), std::move(message));
    }
    void info(std::string stage, std::string context, std::string message) {
        add(Severity::Info, std::move(stage), std::move(context), std::move(message));
    }

    const std::vector<Diagnostic>& items() const { return items_; }
    size_t size() const { return items_.size(); }
    bool empty() const { return items_.empty(); }

private:
    std::vector<Diagnostic> items_;
};

}  // namespace dsmeta
