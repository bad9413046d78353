#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "dnacc/channel.hpp"
#include "dnacc/core.hpp"

namespace dnacc {

// JSON wire formats. Parsing failures throw Error(ParseError); semantic
// violations (duplicate index, wrong strand count) surface the usual codes.

nlohmann::json message_to_json(const Message& z);
Message message_from_json(const nlohmann::json& j);

struct Codebook {
  SystemParams params;
  std::vector<Message> codewords;
};

nlohmann::json codebook_to_json(const Codebook& book);
Codebook codebook_from_json(const nlohmann::json& j);

nlohmann::json read_pool_to_json(const ReadPool& pool);
ReadPool read_pool_from_json(const nlohmann::json& j);

nlohmann::json parse_json_text(const std::string& text);
nlohmann::json load_json_file(const std::string& path);
std::string read_text_file(const std::string& path);

}  // namespace dnacc
