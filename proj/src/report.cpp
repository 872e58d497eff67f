// Copyright (c) 2026 The symrtlo Authors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include <cstdio>

#include <openssl/evp.h>

#include "symrtlo/error.hpp"
#include "symrtlo/pipeline.hpp"

namespace symrtlo {

std::string sha256_hex(const std::string &data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error(ErrorKind::Internal, "SHA-256 digest failed");
  std::string hex;
  char buf[3];
  for (unsigned i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

nlohmann::ordered_json RunReport::to_json(bool with_timings) const {
  using J = nlohmann::ordered_json;
  J j;
  j["input"] = {{"name", input_name}, {"sha256", input_sha256}};
  j["output"] = {{"name", output_name}, {"sha256", output_sha256}};
  j["seed"] = seed;
  j["adapter"] = adapter;
  j["success"] = success;
  j["failure"] = failure ? J(*failure) : J(nullptr);
  j["plan"] = plan.to_json();
  j["rewrite_log"] = rewrite_log.to_json();
  if (fsm) {
    J f;
    f["original_states"] = fsm->original_states;
    f["minimized_states"] = fsm->minimized_states;
    f["mapping"] = J::object();
    for (const auto &[from, to] : fsm->mapping)
      f["mapping"][from] = to;
    f["exact"] = fsm->exact;
    f["applied"] = fsm->applied;
    f["notes"] = fsm->notes;
    j["fsm_summary"] = f;
  } else {
    j["fsm_summary"] = nullptr;
  }
  j["verification"] = J::array();
  for (const auto &v : verification) {
    J e = v.verdict.to_json();
    e["stage"] = v.stage;
    j["verification"].push_back(e);
  }
  j["cost_before"] = cost_before.to_json();
  j["cost_after"] = cost_after.to_json();
  if (with_timings) {
    j["timings_ms"] = J::object();
    for (const auto &[stage, ms] : timings_ms)
      j["timings_ms"][stage] = ms;
  }
  return j;
}

} // namespace symrtlo
