#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <sys/wait.h>

#include "tacit/parser.hpp"
#include "tacit/validate.hpp"

namespace test {

inline tacit::Model parse(const std::string& text,
                          const std::string& file = "test.dsl") {
  return tacit::parse_model(text, file);
}

/// Parses and validates; throws when the fixture is unexpectedly invalid.
inline tacit::Model parseValid(const std::string& text,
                               const std::string& file = "test.dsl") {
  tacit::Model m = tacit::parse_model(text, file);
  auto errors = tacit::validate_model(m);
  if (!errors.empty()) {
    std::string what = "fixture failed validation:";
    for (const auto& e : errors) what += "\n  " + e.format(file);
    throw std::runtime_error(what);
  }
  return m;
}

inline std::string fixtureDir() { return TACIT_FIXTURE_DIR; }
inline std::string dataDir() { return TACIT_DATA_DIR; }
inline std::string auditBin() { return TACIT_AUDIT_BIN; }

inline std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct RunResult {
  int exitCode = -1;
  std::string output;  // stdout only
};

/// Runs a command through the shell from a working directory.
inline RunResult run(const std::string& cwd, const std::string& cmd) {
  std::string full = "cd '" + cwd + "' && " + cmd + " 2>/dev/null";
  FILE* pipe = popen(full.c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed");
  RunResult r;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.output.append(buf, n);
  int status = pclose(pipe);
  r.exitCode = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

inline std::string quoted(const std::string& s) { return "'" + s + "'"; }

}  // namespace test
