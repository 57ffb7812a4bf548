#include "median/report.hpp"

#include <algorithm>
#include <iomanip>
#include <memory>
#include <sstream>

#include <json.hpp>
#include <openssl/evp.h>

namespace median {

std::string to_json(const Report& r) {
  nlohmann::json j;
  j["command"] = r.command;
  j["inputs_digest"] = r.inputs_digest;
  nlohmann::json checks = nlohmann::json::array();
  for (const Check& c : r.checks) {
    nlohmann::json o;
    o["name"] = c.name;
    o["paper_anchor"] = c.anchor;
    o["status"] = c.pass ? "pass" : "fail";
    if (!c.witness.empty()) o["witness"] = c.witness;
    o["numbers"] = nlohmann::json::object();
    for (const auto& [k, v] : c.numbers) o["numbers"][k] = v;
    if (!c.note.empty()) o["note"] = c.note;
    checks.push_back(std::move(o));
  }
  j["checks"] = std::move(checks);
  j["exit_status"] = r.exit_status();
  return j.dump(2) + "\n";
}

std::string to_text(const Report& r) {
  std::ostringstream out;
  for (const Check& c : r.checks) {
    out << (c.pass ? "PASS " : "FAIL ") << c.name;
    for (const auto& [k, v] : c.numbers) out << "  " << k << "=" << v;
    if (!c.witness.empty()) {
      out << "  witness=";
      for (std::size_t i = 0; i < c.witness.size(); ++i) out << (i ? "," : "") << c.witness[i];
    }
    if (!c.note.empty()) out << "  (" << c.note << ")";
    out << "\n";
  }
  auto failed = std::count_if(r.checks.begin(), r.checks.end(), [](const Check& c) { return !c.pass; });
  if (failed == 0)
    out << "ok: " << r.checks.size() << " checks\n";
  else
    out << "FAILED: " << failed << " of " << r.checks.size() << " checks\n";
  return out.str();
}

std::string sha256_hex(const std::string& data) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 || EVP_DigestFinal_ex(ctx.get(), digest, &len) != 1)
    throw std::runtime_error("sha256 failed");
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return hex.str();
}

}  // namespace median
