#ifndef MESONET_TESTS_FIXTURES_HPP
#define MESONET_TESTS_FIXTURES_HPP

#include <unistd.h>

#include <atomic>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "mesonet/graph.hpp"

namespace fixture {

using EdgeList = std::vector<std::pair<mesonet::NodeId, mesonet::NodeId>>;

inline EdgeList star(std::uint32_t leaves) {
  EdgeList e;
  for (std::uint32_t i = 1; i <= leaves; ++i) e.emplace_back(0, i);
  return e;
}

inline EdgeList cycle(std::uint32_t n) {
  EdgeList e;
  for (std::uint32_t i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return e;
}

inline EdgeList path(std::uint32_t n) {
  EdgeList e;
  for (std::uint32_t i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return e;
}

inline EdgeList complete(std::uint32_t n) {
  EdgeList e;
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return e;
}

// Triangle 0-1-2 with a tail 2-3-4 and a pendant 5 on node 0 (node 6 isolated
// in a 7-node graph).
inline EdgeList lollipop_like() { return {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {0, 5}}; }

inline mesonet::Graph graph(std::size_t n, const EdgeList& e) { return mesonet::Graph(n, e); }

// A fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("mesonet-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline std::filesystem::path data_file(const std::string& name) {
  return std::filesystem::path(MESONET_TEST_DATA_DIR) / name;
}

}  // namespace fixture

#endif  // MESONET_TESTS_FIXTURES_HPP
