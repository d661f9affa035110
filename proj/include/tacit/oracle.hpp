#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tacit/errors.hpp"

namespace tacit {

/// Request kinds understood by the optional external semantic oracle.
enum class OracleKind { Expand, Checklist, Synonyms, Interpret };

const char* oracle_kind_name(OracleKind k);

struct OracleRequest {
  OracleKind kind = OracleKind::Expand;
  nlohmann::json payload;  // kind-specific map of text fields, nonempty
};

struct OracleCandidate {
  std::string text;
  double confidence = 0.0;  // in [0, 1]
};

struct OracleResponse {
  std::vector<OracleCandidate> candidates;
};

/// Single HTTP POST of {kind, payload} to <url>/v1/query. Returns nullopt
/// (Unavailable) on timeout, non-2xx, or malformed body; analyses must
/// degrade gracefully and treat deterministic results as authoritative.
/// Throws ConfigError when the url is malformed.
std::optional<OracleResponse> query(const std::string& url,
                                    const OracleRequest& req,
                                    int timeoutMs = 5000);

/// Caps total calls per run so a misconfigured endpoint cannot stall a
/// whole audit.
class OracleClient {
 public:
  OracleClient(std::string url, int timeoutMs = 5000, int maxCalls = 50);

  std::optional<OracleResponse> ask(const OracleRequest& req);

  const std::string& url() const { return url_; }

 private:
  std::string url_;
  int timeoutMs_;
  int callsLeft_;
};

}  // namespace tacit
