#include "behavemark/trajectory.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <unordered_set>

#include <nlohmann/json.hpp>

namespace behavemark {

using ordered_json = nlohmann::ordered_json;

void StepRecord::validate() const {
  if (step_index < 1) throw InvariantViolation("step_index must be >= 1");
  if (candidates.empty()) throw InvariantViolation("candidates must be non-empty");
  if (candidates.size() > kMaxCandidates)
    throw InvariantViolation("more than " + std::to_string(kMaxCandidates) + " candidates");
  if (candidates.size() != probs_micro.size())
    throw InvariantViolation("candidates/probs_micro length mismatch");
  std::unordered_set<std::string> seen;
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (!seen.insert(candidates[i]).second)
      throw InvariantViolation("duplicate candidate '" + candidates[i] + "'");
    if (probs_micro[i] < 0) throw InvariantViolation("negative probability units");
    sum += probs_micro[i];
  }
  if (sum != kProbOne)
    throw InvariantViolation("probs_micro sum to " + std::to_string(sum) + ", expected " +
                             std::to_string(kProbOne));
  if (std::find(candidates.begin(), candidates.end(), chosen) == candidates.end())
    throw InvariantViolation("chosen behavior '" + chosen + "' not among candidates");
}

void Trajectory::validate() const {
  for (std::size_t i = 0; i < records.size(); ++i) {
    records[i].validate();
    if (i > 0) {
      if (records[i].trajectory_id != records[0].trajectory_id)
        throw InvariantViolation("mixed trajectory_id within one trajectory");
      if (records[i].step_index <= records[i - 1].step_index)
        throw InvariantViolation("step_index not strictly increasing");
    }
  }
}

namespace {

ordered_json record_to_json(const StepRecord& rec) {
  ordered_json j;
  j["trajectory_id"] = rec.trajectory_id;
  j["t"] = rec.step_index;
  j["context_hex"] = bytes_to_hex(rec.context_payload);
  j["candidates"] = rec.candidates;
  j["probs_micro"] = rec.probs_micro;
  j["chosen"] = rec.chosen;
  return j;
}

StepRecord record_from_json(const ordered_json& j, std::size_t line_no) {
  StepRecord rec;
  try {
    rec.trajectory_id = j.at("trajectory_id").get<std::string>();
    rec.step_index = j.at("t").get<std::uint64_t>();
    rec.context_payload = hex_to_bytes(j.at("context_hex").get<std::string>());
    rec.candidates = j.at("candidates").get<std::vector<std::string>>();
    rec.probs_micro = j.at("probs_micro").get<std::vector<std::int64_t>>();
    rec.chosen = j.at("chosen").get<std::string>();
  } catch (const ordered_json::exception& e) {
    throw ParseError(line_no, e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(line_no, e.what());
  }
  return rec;
}

std::vector<StepRecord> parse_records(std::istream& source) {
  std::vector<StepRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(source, line)) {
    ++line_no;
    if (line.empty()) continue;
    ordered_json j = ordered_json::parse(line, nullptr, false);
    if (j.is_discarded()) throw ParseError(line_no, "invalid JSON record");
    StepRecord rec = record_from_json(j, line_no);
    rec.validate();
    records.push_back(std::move(rec));
  }
  return records;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  return out;
}

}  // namespace

void write_log(const Trajectory& traj, std::ostream& sink) {
  traj.validate();
  for (const auto& rec : traj.records) sink << record_to_json(rec).dump() << '\n';
}

void write_log_file(const Trajectory& traj, const std::string& path) {
  auto out = open_output(path);
  write_log(traj, out);
}

Trajectory read_log(std::istream& source) {
  Trajectory traj{parse_records(source)};
  traj.validate();
  return traj;
}

Trajectory read_log_file(const std::string& path) {
  auto in = open_input(path);
  return read_log(in);
}

void write_log_file(const std::vector<Trajectory>& trajs, const std::string& path) {
  auto out = open_output(path);
  for (const auto& traj : trajs) write_log(traj, out);
}

std::vector<Trajectory> read_multi_log(std::istream& source) {
  // Group by trajectory_id, preserving first-seen order of the groups.
  std::vector<Trajectory> out;
  std::map<std::string, std::size_t> index_of;
  for (auto& rec : parse_records(source)) {
    auto [it, inserted] = index_of.try_emplace(rec.trajectory_id, out.size());
    if (inserted) out.emplace_back();
    out[it->second].records.push_back(std::move(rec));
  }
  for (auto& traj : out) traj.validate();
  return out;
}

std::vector<Trajectory> read_multi_log_file(const std::string& path) {
  auto in = open_input(path);
  return read_multi_log(in);
}

Trajectory erase(const Trajectory& traj, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("erase: p outside [0,1]");
  std::mt19937_64 rng(seed);
  Trajectory out;
  for (const auto& rec : traj.records) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    if (u >= p) out.records.push_back(rec);
  }
  return out;
}

Trajectory truncate(const Trajectory& traj, std::uint64_t prefix_len) {
  Trajectory out;
  for (const auto& rec : traj.records)
    if (rec.step_index <= prefix_len) out.records.push_back(rec);
  return out;
}

}  // namespace behavemark
