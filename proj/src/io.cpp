#include "dnacc/io.hpp"

#include <fstream>
#include <sstream>

namespace dnacc {

namespace {

const nlohmann::json& require(const nlohmann::json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end())
    fail(ErrorCode::ParseError, std::string("missing JSON key \"") + key + "\"");
  return *it;
}

std::uint32_t get_u32(const nlohmann::json& j, const char* key) {
  const auto& v = require(j, key);
  if (!v.is_number_integer())
    fail(ErrorCode::ParseError, std::string("\"") + key + "\" must be an integer");
  auto n = v.get<std::int64_t>();
  if (n < 0 || n > 0xFFFFFFFFLL)
    fail(ErrorCode::ParseError, std::string("\"") + key + "\" out of range");
  return static_cast<std::uint32_t>(n);
}

BitVector get_bits(const nlohmann::json& j, const char* key) {
  const auto& v = require(j, key);
  if (!v.is_string())
    fail(ErrorCode::ParseError, std::string("\"") + key + "\" must be a bit string");
  return BitVector::from_string(v.get<std::string>());
}

Strand strand_from_json(const nlohmann::json& j) {
  if (!j.is_object())
    fail(ErrorCode::ParseError, "strand must be an object with index and data");
  return Strand{get_bits(j, "index"), get_bits(j, "data")};
}

nlohmann::json strand_to_json(const Strand& s) {
  return {{"index", s.index.to_string()}, {"data", s.data.to_string()}};
}

const nlohmann::json& require_array(const nlohmann::json& j, const char* key) {
  const auto& v = require(j, key);
  if (!v.is_array())
    fail(ErrorCode::ParseError, std::string("\"") + key + "\" must be an array");
  return v;
}

}  // namespace

nlohmann::json message_to_json(const Message& z) {
  nlohmann::json strands = nlohmann::json::array();
  for (const auto& s : z.strands()) strands.push_back(strand_to_json(s));
  return {{"M", z.params().strand_count},
          {"L", z.params().strand_length},
          {"l", z.params().index_length},
          {"strands", std::move(strands)}};
}

Message message_from_json(const nlohmann::json& j) {
  if (!j.is_object()) fail(ErrorCode::ParseError, "message must be a JSON object");
  SystemParams params{get_u32(j, "M"), get_u32(j, "L"), get_u32(j, "l")};
  std::vector<Strand> strands;
  for (const auto& s : require_array(j, "strands"))
    strands.push_back(strand_from_json(s));
  return Message(params, std::move(strands));
}

nlohmann::json codebook_to_json(const Codebook& book) {
  nlohmann::json words = nlohmann::json::array();
  for (const auto& z : book.codewords) {
    nlohmann::json strands = nlohmann::json::array();
    for (const auto& s : z.strands()) strands.push_back(strand_to_json(s));
    words.push_back(std::move(strands));
  }
  return {{"params",
           {{"M", book.params.strand_count},
            {"L", book.params.strand_length},
            {"l", book.params.index_length}}},
          {"codewords", std::move(words)}};
}

Codebook codebook_from_json(const nlohmann::json& j) {
  if (!j.is_object()) fail(ErrorCode::ParseError, "codebook must be a JSON object");
  const auto& p = require(j, "params");
  if (!p.is_object())
    fail(ErrorCode::ParseError, "\"params\" must be an object");
  SystemParams params{get_u32(p, "M"), get_u32(p, "L"), get_u32(p, "l")};
  Codebook book{params, {}};
  for (const auto& word : require_array(j, "codewords")) {
    if (!word.is_array())
      fail(ErrorCode::ParseError, "each codeword must be an array of strands");
    std::vector<Strand> strands;
    for (const auto& s : word) strands.push_back(strand_from_json(s));
    book.codewords.emplace_back(params, std::move(strands));
  }
  return book;
}

nlohmann::json read_pool_to_json(const ReadPool& pool) {
  nlohmann::json reads = nlohmann::json::array();
  for (const auto& [s, count] : pool.entries()) {
    nlohmann::json r = strand_to_json(s);
    r["count"] = count;
    reads.push_back(std::move(r));
  }
  return {{"reads", std::move(reads)}};
}

ReadPool read_pool_from_json(const nlohmann::json& j) {
  if (!j.is_object()) fail(ErrorCode::ParseError, "pool must be a JSON object");
  std::vector<std::pair<Strand, std::uint32_t>> entries;
  for (const auto& r : require_array(j, "reads")) {
    Strand s = strand_from_json(r);
    entries.emplace_back(s, get_u32(r, "count"));
  }
  return ReadPool::from_counts(std::move(entries));
}

nlohmann::json parse_json_text(const std::string& text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::ParseError, e.what());
  }
}

nlohmann::json load_json_file(const std::string& path) {
  return parse_json_text(read_text_file(path));
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::ParseError, "cannot read file: " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace dnacc
