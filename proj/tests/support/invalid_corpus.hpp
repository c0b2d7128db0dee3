#pragma once

// The hand-written invalid documents under testfiles/invalid, paired with
// the error class every reading path must agree on.

#include <utility>

#include "jxes/error.hpp"

namespace invalid_corpus {

struct Entry {
    const char* file;
    jxes::Errc code;
};

inline constexpr Entry kEntries[] = {
    {"01_reserved_key_mixed.json", jxes::Errc::ReservedKeyMisuse},
    {"02_global_attrs_bad_scope.json", jxes::Errc::SchemaViolation},
    {"03_classifier_empty_name.json", jxes::Errc::SchemaViolation},
    {"04_classifier_not_array.json", jxes::Errc::SchemaViolation},
    {"05_classifier_empty_array.json", jxes::Errc::SchemaViolation},
    {"06_classifier_nonstring_key.json", jxes::Errc::SchemaViolation},
    {"07_classifier_empty_key.json", jxes::Errc::SchemaViolation},
    {"08_extension_entry_not_object.json", jxes::Errc::SchemaViolation},
    {"09_extension_missing_uri.json", jxes::Errc::SchemaViolation},
    {"10_extension_empty_prefix.json", jxes::Errc::SchemaViolation},
    {"11_extension_uri_no_scheme.json", jxes::Errc::SchemaViolation},
    {"12_extension_nonstring_name.json", jxes::Errc::SchemaViolation},
    {"13_traces_not_array.json", jxes::Errc::SchemaViolation},
    {"14_trace_not_object.json", jxes::Errc::SchemaViolation},
    {"15_trace_attrs_not_object.json", jxes::Errc::SchemaViolation},
    {"16_events_not_array.json", jxes::Errc::SchemaViolation},
    {"17_event_not_object.json", jxes::Errc::SchemaViolation},
    {"18_null_attribute.json", jxes::Errc::SchemaViolation},
    {"19_list_element_not_object.json", jxes::Errc::SchemaViolation},
    {"20_nested_attrs_not_object.json", jxes::Errc::ReservedKeyMisuse},
    {"21_reserved_in_value_position.json", jxes::Errc::ReservedKeyMisuse},
    {"22_int_overflow.json", jxes::Errc::IntOutOfRange},
    {"23_float_overflow.json", jxes::Errc::SchemaViolation},
    {"24_global_attrs_not_object.json", jxes::Errc::SchemaViolation},
    {"25_truncated.json", jxes::Errc::MalformedJson},
};

}  // namespace invalid_corpus
