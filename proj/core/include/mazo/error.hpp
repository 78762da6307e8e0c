#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mazo {

// Base for every error the engine throws. Game outcomes (defeat, aborts,
// stalls) are data, never exceptions; an exception always means the caller
// broke a contract or fed in bad external input.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ContractViolation : public Error {
 public:
  using Error::Error;
};

class NotFound : public Error {
 public:
  NotFound(std::string kind, std::string id)
      : Error("unknown " + kind + " id '" + id + "'"), kind_(std::move(kind)), id_(std::move(id)) {}
  const std::string& kind() const noexcept { return kind_; }
  const std::string& id() const noexcept { return id_; }

 private:
  std::string kind_;
  std::string id_;
};

class ContentError : public Error {
 public:
  explicit ContentError(std::vector<std::string> violations)
      : Error(join(violations)), violations_(std::move(violations)) {}
  const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  static std::string join(const std::vector<std::string>& v) {
    std::string out = "content invalid:";
    for (const auto& s : v) out += "\n  " + s;
    return out;
  }
  std::vector<std::string> violations_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class WrongPhase : public Error {
 public:
  using Error::Error;
};

class IllegalAction : public Error {
 public:
  using Error::Error;
};

class InsufficientCredits : public Error {
 public:
  InsufficientCredits(int price, int credits)
      : Error("insufficient credits: price " + std::to_string(price) + ", have " +
              std::to_string(credits)) {}
};

class RequirementNotMet : public Error {
 public:
  using Error::Error;
};

class PersistError : public Error {
 public:
  enum class Kind { Malformed, UnsupportedVersion, DanglingId };
  PersistError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

// Undecodable or oversized wire message.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

// Malformed pairing frame or oversized pairing payload.
class FrameError : public Error {
 public:
  using Error::Error;
};

}  // namespace mazo
