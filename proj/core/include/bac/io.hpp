#pragma once

#include <bac/instance.hpp>

#include <istream>
#include <stdexcept>
#include <string>

namespace bac {

/// A malformed instance file. what() reads "<source>:<line>: <message>".
class ParseError : public std::runtime_error
{
public:
    ParseError(const std::string& source, std::size_t line, const std::string& message);

    std::size_t line() const noexcept { return line_; }
    const std::string& message() const noexcept { return message_; }

private:
    std::size_t line_;
    std::string message_;
};

Instance parse_instance(std::istream& in, const std::string& source = "<input>");
Instance parse_instance_text(const std::string& text, const std::string& source = "<input>");
Instance load_instance(const std::string& path);

/// Canonical text: header, variables in id order, functions in id order.
std::string emit_instance(const Instance& inst);
void save_instance(const Instance& inst, const std::string& path);

} // namespace bac
