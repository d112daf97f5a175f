/*
 * Copyright 2026 The bidgame Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace bidgame {

enum class ErrorKind {
    Parse,
    Validation,
    DanglingEdge,
    SinkVertex,
    MissingParity,
    RewardMissing,
    NotStronglyConnected,
    OutDegreeNotTwo,
    NonConvergence,
    IterationCap,
    UnreachableBoundary,
    PreconditionViolated,
    InvariantBroken,
    IllegalBid,
    InvalidArgument,
};

inline const char* to_string(ErrorKind k)
{
    switch (k) {
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::Validation: return "ValidationError";
    case ErrorKind::DanglingEdge: return "DanglingEdge";
    case ErrorKind::SinkVertex: return "SinkVertex";
    case ErrorKind::MissingParity: return "MissingParity";
    case ErrorKind::RewardMissing: return "RewardMissing";
    case ErrorKind::NotStronglyConnected: return "NotStronglyConnected";
    case ErrorKind::OutDegreeNotTwo: return "OutDegreeNotTwo";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::IterationCap: return "IterationCap";
    case ErrorKind::UnreachableBoundary: return "UnreachableBoundary";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::InvariantBroken: return "InvariantBroken";
    case ErrorKind::IllegalBid: return "IllegalBid";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Error";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace bidgame
