/*
 * Copyright 2026 The tasdn Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
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

namespace tasdn {

class PastTimeError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class UnhandledEventKind : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Argument outside its mathematical domain (probability, trust score).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class InvalidSpec : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class UnknownSwitch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class DuplicateRule : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class NoFallbackObserved : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, int line) : std::runtime_error(what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Failure raised while a scenario is executing; names the offending event.
class ScenarioError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace tasdn
