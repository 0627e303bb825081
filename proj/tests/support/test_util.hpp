#pragma once

#include <cstdlib>
#include <filesystem>
#include <functional>
#include <string>

#include "decomp/errors.hpp"
#include "decomp/model.hpp"

namespace testutil {

// Runs `fn`, which must throw a DomainError, and returns its kind.
inline decomp::ErrorKind error_kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const decomp::DomainError& e) {
    return e.kind();
  }
  throw std::runtime_error("expected a DomainError, none was thrown");
}

// The four-class chain A -> B -> C -> D used throughout the worked examples.
inline decomp::MonolithGraph g4() {
  return decomp::MonolithGraph(
      "g4", {{"A", {}}, {"B", {}}, {"C", {}}, {"D", {}}},
      {{"A", "B", decomp::CallKind::static_call, 1},
       {"B", "C", decomp::CallKind::static_call, 1},
       {"C", "D", decomp::CallKind::static_call, 1}});
}

inline decomp::Decomposition g4_pair() {
  decomp::Decomposition d;
  d.tool = "pair";
  d.system = "g4";
  d.services = {{"s1", {"A", "B"}}, {"s2", {"C", "D"}}};
  return d;
}

inline std::filesystem::path data_dir() {
#ifdef DECOMP_DATA_DIR
  return std::filesystem::path(DECOMP_DATA_DIR);
#else
  return std::filesystem::current_path() / "data";
#endif
}

// Fresh directory under the system temp root; caller removes it.
inline std::filesystem::path make_temp_dir() {
  std::string tmpl =
      (std::filesystem::temp_directory_path() / "decomp_test_XXXXXX").string();
  if (!mkdtemp(tmpl.data()))
    throw std::runtime_error("mkdtemp failed for " + tmpl);
  return std::filesystem::path(tmpl);
}

class TempDir {
 public:
  TempDir() : path_(make_temp_dir()) {}
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace testutil
