#pragma once

#include "goalrec/recognition/recognizer.h"

#include <string>

namespace goalrec::recognition {

// Single-line JSON document. Infinite values are written as the string
// "inf"; count vectors are stored sparsely together with their length.
std::string report_to_json(const RecognitionReport &report);
// Inverse of report_to_json; throws ParseError on malformed input.
RecognitionReport report_from_json(const std::string &text);

// Header (method, |O|, U, timings) and one line per hypothesis.
std::string format_report(const RecognitionReport &report);

std::string format_value(double value);

}  // namespace goalrec::recognition
