#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "mixsum/verifier.hpp"

namespace mixsum {

void write_checkpoint(const std::string& path, const Checkpoint& cp) {
  nlohmann::json j;
  j["kind"] = cp.kind;
  j["form"] = cp.form;
  j["expression"] = cp.expression;
  j["lo"] = cp.lo;
  j["hi"] = cp.hi;
  j["next_n"] = cp.next_n;
  j["verified_count"] = cp.verified_count;
  j["exceptions"] = nlohmann::json::array();
  for (const auto& e : cp.exceptions) {
    j["exceptions"].push_back({{"n", to_string(e.n)}, {"candidates_checked", e.candidates_checked}});
  }
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw Error("cannot write checkpoint " + tmp);
    out << j.dump(1) << '\n';
  }
  std::filesystem::rename(tmp, path);
}

Checkpoint read_checkpoint(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read checkpoint " + path);
  nlohmann::json j;
  try {
    in >> j;
    Checkpoint cp;
    cp.kind = j.at("kind").get<std::string>();
    cp.form = j.at("form").get<std::string>();
    cp.expression = j.at("expression").get<std::string>();
    cp.lo = j.at("lo").get<std::uint64_t>();
    cp.hi = j.at("hi").get<std::uint64_t>();
    cp.next_n = j.at("next_n").get<std::uint64_t>();
    cp.verified_count = j.at("verified_count").get<std::uint64_t>();
    for (const auto& e : j.at("exceptions")) {
      ExceptionRecord rec;
      rec.form = cp.form;
      rec.n = BigInt(e.at("n").get<std::string>());
      rec.candidates_checked = e.at("candidates_checked").get<std::uint64_t>();
      cp.exceptions.push_back(std::move(rec));
    }
    return cp;
  } catch (const nlohmann::json::exception& ex) {
    throw Error("malformed checkpoint " + path + ": " + ex.what());
  }
}

}  // namespace mixsum
