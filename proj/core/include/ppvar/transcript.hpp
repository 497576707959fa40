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

#ifndef PPVAR_TRANSCRIPT_HPP_
#define PPVAR_TRANSCRIPT_HPP_

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace ppvar {

// Receiver name for one-to-all messages.
inline constexpr const char* kBroadcast = "broadcast";

// One transmitted matrix. Everything any party sends is recorded exactly
// once; adversary code consumes transcripts and nothing else.
struct TranscriptEntry {
  std::string sender;
  std::string receiver;
  std::string label;
  int iteration = 0;  // 0 for one-shot protocols
  Eigen::MatrixXd values;
};

class ProtocolTranscript {
 public:
  ProtocolTranscript() = default;
  explicit ProtocolTranscript(std::string protocol_id)
      : protocol_id_(std::move(protocol_id)) {}

  const std::string& protocol_id() const { return protocol_id_; }
  void set_protocol_id(std::string id) { protocol_id_ = std::move(id); }

  void record(TranscriptEntry entry) { entries_.push_back(std::move(entry)); }
  void record(const std::string& sender, const std::string& receiver,
              const std::string& label, int iteration,
              Eigen::MatrixXd values) {
    entries_.push_back({sender, receiver, label, iteration, std::move(values)});
  }

  const std::vector<TranscriptEntry>& entries() const { return entries_; }
  size_t size() const { return entries_.size(); }

  // Entries observable by `party`: sent by it, addressed to it, or broadcast.
  std::vector<const TranscriptEntry*> visible_to(
      const std::string& party) const;

  // Addressed (or broadcast) to `party` with the given label, in order.
  std::vector<const TranscriptEntry*> received_by(
      const std::string& party, const std::string& label) const;

  void save_jsonl(const std::string& path) const;
  static ProtocolTranscript load_jsonl(const std::string& path);

 private:
  std::string protocol_id_;
  std::vector<TranscriptEntry> entries_;
};

}  // namespace ppvar

#endif  // PPVAR_TRANSCRIPT_HPP_
