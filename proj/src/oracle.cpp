#include "tacit/oracle.hpp"

#include <httplib.h>

namespace tacit {

const char* oracle_kind_name(OracleKind k) {
  switch (k) {
    case OracleKind::Expand: return "expand";
    case OracleKind::Checklist: return "checklist";
    case OracleKind::Synonyms: return "synonyms";
    case OracleKind::Interpret: return "interpret";
  }
  return "?";
}

namespace {

struct ParsedUrl {
  std::string hostPort;  // scheme://host[:port]
  std::string basePath;  // leading path without trailing slash
};

ParsedUrl parseUrl(const std::string& url) {
  std::string rest;
  std::string scheme;
  if (url.rfind("http://", 0) == 0) {
    scheme = "http://";
    rest = url.substr(7);
  } else if (url.rfind("https://", 0) == 0) {
    scheme = "https://";
    rest = url.substr(8);
  } else {
    throw ConfigError("oracle url must start with http:// or https://: " + url);
  }
  auto slash = rest.find('/');
  std::string host = slash == std::string::npos ? rest : rest.substr(0, slash);
  std::string path = slash == std::string::npos ? "" : rest.substr(slash);
  if (host.empty()) throw ConfigError("oracle url has no host: " + url);
  while (!path.empty() && path.back() == '/') path.pop_back();
  return {scheme + host, path};
}

}  // namespace

std::optional<OracleResponse> query(const std::string& url,
                                    const OracleRequest& req,
                                    int timeoutMs) {
  ParsedUrl parsed = parseUrl(url);

  nlohmann::json body;
  body["kind"] = oracle_kind_name(req.kind);
  body["payload"] = req.payload;

  httplib::Client client(parsed.hostPort);
  client.set_connection_timeout(0, timeoutMs * 1000);
  client.set_read_timeout(0, timeoutMs * 1000);
  client.set_write_timeout(0, timeoutMs * 1000);

  auto res = client.Post(parsed.basePath + "/v1/query", body.dump(),
                         "application/json");
  if (!res || res->status < 200 || res->status >= 300) return std::nullopt;

  OracleResponse out;
  try {
    nlohmann::json j = nlohmann::json::parse(res->body);
    if (!j.contains("candidates") || !j["candidates"].is_array())
      return std::nullopt;
    for (const auto& c : j["candidates"]) {
      if (!c.contains("text") || !c["text"].is_string() ||
          !c.contains("confidence") || !c["confidence"].is_number())
        return std::nullopt;
      double conf = c["confidence"].get<double>();
      if (conf < 0.0 || conf > 1.0) return std::nullopt;
      out.candidates.push_back({c["text"].get<std::string>(), conf});
    }
  } catch (const nlohmann::json::exception&) {
    return std::nullopt;
  }
  return out;
}

OracleClient::OracleClient(std::string url, int timeoutMs, int maxCalls)
    : url_(std::move(url)), timeoutMs_(timeoutMs), callsLeft_(maxCalls) {
  parseUrl(url_);  // validate eagerly
}

std::optional<OracleResponse> OracleClient::ask(const OracleRequest& req) {
  if (callsLeft_ <= 0) return std::nullopt;
  --callsLeft_;
  return query(url_, req, timeoutMs_);
}

}  // namespace tacit
