// Copyright 2026 The gazeq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace gazeq {

enum class ErrorKind {
  // session loading
  MissingFile,
  SchemaError,
  OrderingError,
  DanglingReference,
  InvalidInterval,
  // analytics
  UnlabeledFixation,
  EmptyInput,
  // localization
  NoFrames,
  DecodeError,
  ProviderError,
  BackendError,
  EmptyDetection,
  // backends
  BackendUnavailable,
  FixtureMiss,
  MalformedResponse,
  ConfigError,
  // prompt / response
  TemplateError,
  ParseError,
  MissingField,
  // evaluation
  EmptyTruth,
  // synth
  SeedMismatch,
  // pipeline / cli
  PreconditionFailed,
  DivergenceDetected,
  UsageError,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MissingFile: return "MissingFile";
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::OrderingError: return "OrderingError";
    case ErrorKind::DanglingReference: return "DanglingReference";
    case ErrorKind::InvalidInterval: return "InvalidInterval";
    case ErrorKind::UnlabeledFixation: return "UnlabeledFixation";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::NoFrames: return "NoFrames";
    case ErrorKind::DecodeError: return "DecodeError";
    case ErrorKind::ProviderError: return "ProviderError";
    case ErrorKind::BackendError: return "BackendError";
    case ErrorKind::EmptyDetection: return "EmptyDetection";
    case ErrorKind::BackendUnavailable: return "BackendUnavailable";
    case ErrorKind::FixtureMiss: return "FixtureMiss";
    case ErrorKind::MalformedResponse: return "MalformedResponse";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::TemplateError: return "TemplateError";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::MissingField: return "MissingField";
    case ErrorKind::EmptyTruth: return "EmptyTruth";
    case ErrorKind::SeedMismatch: return "SeedMismatch";
    case ErrorKind::PreconditionFailed: return "PreconditionFailed";
    case ErrorKind::DivergenceDetected: return "DivergenceDetected";
    case ErrorKind::UsageError: return "UsageError";
  }
  return "Unknown";
}

/// Domain error carrying a machine-readable kind and the pipeline stage that
/// raised it. `detail` holds the offending name (field, role, query id) when
/// there is one.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message, std::string detail = {})
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind),
        message_(std::move(message)),
        detail_(std::move(detail)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& message() const noexcept { return message_; }
  const std::string& detail() const noexcept { return detail_; }
  const std::string& stage() const noexcept { return stage_; }

  Error& with_stage(std::string stage) {
    if (stage_.empty()) stage_ = std::move(stage);
    return *this;
  }

 private:
  ErrorKind kind_;
  std::string message_;
  std::string detail_;
  std::string stage_;
};

[[noreturn]] inline void fail(ErrorKind kind, std::string message, std::string detail = {}) {
  throw Error(kind, std::move(message), std::move(detail));
}

}  // namespace gazeq
