#pragma once

#include <algorithm>
#include <string>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "parity/provider/backend.hpp"

namespace parity::provider {

// POSTs a JSON body and parses a JSON reply. Connection failures and
// 429/5xx statuses are retried per the policy; anything else non-2xx is a
// protocol error.
inline nlohmann::json post_json_with_retries(const std::string& base_url,
                                             const std::string& path,
                                             const httplib::Headers& headers,
                                             const nlohmann::json& body,
                                             const RetryPolicy& retry) {
  const std::string payload = body.dump();
  std::string last_error;
  for (int attempt = 0; attempt <= retry.max_retries; ++attempt) {
    if (attempt > 0) {
      const auto base = retry.backoff[static_cast<size_t>(
          std::min(attempt - 1, static_cast<int>(retry.backoff.size()) - 1))];
      const auto sleep = std::chrono::duration_cast<std::chrono::milliseconds>(
          base * retry.sleep_scale);
      std::this_thread::sleep_for(sleep);
    }
    httplib::Client client(base_url);
    client.set_connection_timeout(30, 0);
    client.set_read_timeout(300, 0);
    httplib::Result result = client.Post(path, headers, payload, "application/json");
    if (!result) {
      last_error = "connection failed: " + httplib::to_string(result.error());
      continue;
    }
    if (result->status == 429 || result->status >= 500) {
      last_error = "status " + std::to_string(result->status);
      continue;
    }
    if (result->status < 200 || result->status >= 300)
      throw ProtocolError(base_url + path + ": status " + std::to_string(result->status) + ": " +
                          result->body);
    try {
      return nlohmann::json::parse(result->body);
    } catch (const nlohmann::json::exception& e) {
      throw ProtocolError(base_url + path + ": malformed JSON payload: " + e.what());
    }
  }
  throw TransportError(base_url + path + ": " + last_error + " after " +
                       std::to_string(retry.max_retries + 1) + " attempts");
}

}  // namespace parity::provider
