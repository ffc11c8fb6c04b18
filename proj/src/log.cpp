#include "mesonet/log.hpp"

#include <atomic>
#include <iostream>
#include <mutex>

namespace mesonet::log {
namespace {

std::mutex& sink_mutex() {
  static std::mutex m;
  return m;
}

Sink& current_sink() {
  static Sink sink = [](const std::string& msg) {
    std::clog << "warning: " << msg << '\n';
  };
  return sink;
}

std::atomic<bool> quiet{false};

}  // namespace

Sink set_warning_sink(Sink sink) {
  std::lock_guard lock(sink_mutex());
  Sink previous = std::move(current_sink());
  current_sink() = std::move(sink);
  return previous;
}

void warn(const std::string& message) {
  std::lock_guard lock(sink_mutex());
  if (current_sink()) current_sink()(message);
}

void info(const std::string& message) {
  if (quiet.load()) return;
  std::lock_guard lock(sink_mutex());
  std::clog << message << '\n';
}

void set_quiet(bool q) { quiet.store(q); }

}  // namespace mesonet::log
