#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace reseq {

enum class Errc {
  InvalidArgument,
  LaneFull,
  LaneLocked,
  BufferFull,
  LaneEmpty,
  HeadBlocked,
  UnknownLane,
  SequenceTooShort,
  DuplicateBlendNumber,
  EmptySequence,
  ZeroBaseline,
  DegenerateInput,
  InsufficientSamples,
  NoCompatibleOrder,
  NoEligibleHead,
  NoAvailableLane,
  StaleDecision,
  InconsistentEvent,
  ParseError,
  ValidationFailed,
  IoError,
};

std::string_view to_string(Errc code) noexcept;

// Every failure raised by the library carries one of the codes above so that
// the service and the CLI can map it to a status without string matching.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace reseq
