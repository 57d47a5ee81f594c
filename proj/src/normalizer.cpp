#include "qbek/normalizer.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

#include "qbek/errors.hpp"
#include "qbek/porter.hpp"
#include "qbek/unicode.hpp"

namespace qbek {

std::vector<std::string> Normalizer::normalize_batch(const std::vector<std::string>& tokens) const {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const std::string& t : tokens) out.push_back(normalize(t));
  return out;
}

std::string PorterNormalizer::normalize(const std::string& token) const {
  return porter_stem(token);
}

namespace {

// Runs `sh -c command`, feeding `input` on stdin and capturing stdout.
// Returns the captured output; throws ExternalNormalizerFailure on spawn
// failure or nonzero exit.
std::string run_command(const std::string& command, const std::string& input) {
  int in_pipe[2], out_pipe[2];
  if (pipe(in_pipe) != 0 || pipe(out_pipe) != 0)
    throw ExternalNormalizerFailure(command, "pipe: " + std::string(std::strerror(errno)));
  pid_t pid = fork();
  if (pid < 0)
    throw ExternalNormalizerFailure(command, "fork: " + std::string(std::strerror(errno)));
  if (pid == 0) {
    dup2(in_pipe[0], STDIN_FILENO);
    dup2(out_pipe[1], STDOUT_FILENO);
    close(in_pipe[0]);
    close(in_pipe[1]);
    close(out_pipe[0]);
    close(out_pipe[1]);
    execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  close(in_pipe[0]);
  close(out_pipe[1]);
  std::size_t written = 0;
  while (written < input.size()) {
    ssize_t n = write(in_pipe[1], input.data() + written, input.size() - written);
    if (n < 0) {
      if (errno == EINTR) continue;
      break;  // child closed stdin early; its exit status decides
    }
    written += static_cast<std::size_t>(n);
  }
  close(in_pipe[1]);
  std::string output;
  char buf[4096];
  for (;;) {
    ssize_t n = read(out_pipe[0], buf, sizeof(buf));
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) break;
    output.append(buf, static_cast<std::size_t>(n));
  }
  close(out_pipe[0]);
  int status = 0;
  waitpid(pid, &status, 0);
  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0)
    throw ExternalNormalizerFailure(
        command, WIFEXITED(status)
                     ? "exit status " + std::to_string(WEXITSTATUS(status))
                     : "terminated by signal");
  return output;
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string::npos) {
      lines.push_back(text.substr(pos));
      break;
    }
    std::string line = text.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
    pos = nl + 1;
  }
  return lines;
}

}  // namespace

std::string ExternalCommandNormalizer::normalize(const std::string& token) const {
  return normalize_batch({token}).front();
}

std::vector<std::string> ExternalCommandNormalizer::normalize_batch(
    const std::vector<std::string>& tokens) const {
  if (tokens.empty()) return {};
  std::string input;
  for (const std::string& t : tokens) {
    input += t;
    input += '\n';
  }
  std::vector<std::string> lines = split_lines(run_command(command_, input));
  if (lines.size() != tokens.size())
    throw ExternalNormalizerFailure(
        command_, "expected " + std::to_string(tokens.size()) + " output lines, got " +
                      std::to_string(lines.size()));
  return lines;
}

std::unique_ptr<Normalizer> make_normalizer(const std::string& spec) {
  if (spec == "porter") return std::make_unique<PorterNormalizer>();
  if (spec == "identity") return std::make_unique<IdentityNormalizer>();
  constexpr std::string_view kExternal = "external:";
  if (spec.rfind(kExternal, 0) == 0) {
    std::string command = spec.substr(kExternal.size());
    if (command.empty()) throw ConfigError("external normalizer command is empty");
    return std::make_unique<ExternalCommandNormalizer>(std::move(command));
  }
  throw ConfigError("unknown normalizer '" + spec + "' (expected porter, identity, or external:CMD)");
}

namespace {

bool keeps_for_matching(char32_t c) {
  if (c >= U'a' && c <= U'z') return true;
  if (c >= U'0' && c <= U'9') return true;
  return c >= 0x80;  // non-ASCII letters stay; the input is lowercased already
}

bool is_hyphen(char32_t c) {
  return c == U'-' || c == 0x2010 || c == 0x2011;
}

}  // namespace

std::vector<std::string> matching_tokens(std::string_view text) {
  std::u32string cps = decode_utf8(lowercase(text));
  for (char32_t& c : cps)
    if (is_hyphen(c)) c = U' ';
  std::vector<std::string> tokens;
  for (const WordRange& w : split_words(cps)) {
    std::size_t begin = w.begin, end = w.end;
    while (begin < end && !keeps_for_matching(cps[begin])) ++begin;
    while (end > begin && !keeps_for_matching(cps[end - 1])) --end;
    if (begin == end) continue;
    tokens.push_back(encode_utf8(std::u32string_view(cps).substr(begin, end - begin)));
  }
  return tokens;
}

std::string normalize_keyphrase(std::string_view phrase, const Normalizer& normalizer) {
  std::vector<std::string> normalized = normalizer.normalize_batch(matching_tokens(phrase));
  std::string out;
  for (std::size_t i = 0; i < normalized.size(); ++i) {
    if (i) out += ' ';
    out += normalized[i];
  }
  return out;
}

}  // namespace qbek
