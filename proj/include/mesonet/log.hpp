#ifndef MESONET_LOG_HPP
#define MESONET_LOG_HPP

#include <functional>
#include <string>

namespace mesonet::log {

using Sink = std::function<void(const std::string&)>;

// Replaces the warning sink (default writes to std::clog) and returns the
// previous one. Thread-safe.
Sink set_warning_sink(Sink sink);

void warn(const std::string& message);
void info(const std::string& message);

// Suppresses info() output; warnings still go to the sink.
void set_quiet(bool quiet);

}  // namespace mesonet::log

#endif  // MESONET_LOG_HPP
