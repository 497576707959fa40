// Copyright 2026 The ppvar Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ppvar/transcript.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "ppvar/csv.hpp"
#include "ppvar/errors.hpp"

namespace ppvar {

std::vector<const TranscriptEntry*> ProtocolTranscript::visible_to(
    const std::string& party) const {
  std::vector<const TranscriptEntry*> out;
  for (const auto& e : entries_)
    if (e.sender == party || e.receiver == party || e.receiver == kBroadcast)
      out.push_back(&e);
  return out;
}

std::vector<const TranscriptEntry*> ProtocolTranscript::received_by(
    const std::string& party, const std::string& label) const {
  std::vector<const TranscriptEntry*> out;
  for (const auto& e : entries_)
    if (e.label == label && (e.receiver == party || e.receiver == kBroadcast))
      out.push_back(&e);
  return out;
}

void ProtocolTranscript::save_jsonl(const std::string& path) const {
  std::ofstream os(path);
  if (!os) throw Error("cannot open for writing: " + path);
  for (const auto& e : entries_) {
    nlohmann::ordered_json j;
    j["protocol"] = protocol_id_;
    j["sender"] = e.sender;
    j["receiver"] = e.receiver;
    j["label"] = e.label;
    j["iteration"] = e.iteration;
    j["rows"] = e.values.rows();
    j["cols"] = e.values.cols();
    std::vector<double> vals;
    vals.reserve(static_cast<size_t>(e.values.size()));
    for (Eigen::Index i = 0; i < e.values.rows(); ++i)
      for (Eigen::Index c = 0; c < e.values.cols(); ++c)
        vals.push_back(e.values(i, c));
    j["values"] = vals;
    os << j.dump() << '\n';
  }
}

ProtocolTranscript ProtocolTranscript::load_jsonl(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open for reading: " + path);
  ProtocolTranscript t;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line);
    TranscriptEntry e;
    if (t.protocol_id_.empty())
      t.protocol_id_ = j.value("protocol", std::string());
    e.sender = j.at("sender").get<std::string>();
    e.receiver = j.at("receiver").get<std::string>();
    e.label = j.at("label").get<std::string>();
    e.iteration = j.at("iteration").get<int>();
    const auto rows = j.at("rows").get<Eigen::Index>();
    const auto cols = j.at("cols").get<Eigen::Index>();
    const auto vals = j.at("values").get<std::vector<double>>();
    if (static_cast<Eigen::Index>(vals.size()) != rows * cols)
      throw Error("transcript entry value count mismatch in " + path);
    e.values.resize(rows, cols);
    size_t idx = 0;
    for (Eigen::Index i = 0; i < rows; ++i)
      for (Eigen::Index c = 0; c < cols; ++c) e.values(i, c) = vals[idx++];
    t.entries_.push_back(std::move(e));
  }
  return t;
}

}  // namespace ppvar
