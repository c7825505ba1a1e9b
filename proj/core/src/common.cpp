#include "ctimine/common.hpp"

namespace ctimine {

std::string_view to_string(Source source) noexcept {
  switch (source) {
    case Source::forum: return "forum";
    case Source::chat: return "chat";
    case Source::darknet: return "darknet";
  }
  return "forum";
}

std::optional<Source> parse_source(std::string_view text) noexcept {
  if (text == "forum") return Source::forum;
  if (text == "chat") return Source::chat;
  if (text == "darknet") return Source::darknet;
  return std::nullopt;
}

}  // namespace ctimine
