#pragma once

// Umbrella header for the whole toolkit.

#include "jxes/bench.hpp"
#include "jxes/diagnostics.hpp"
#include "jxes/error.hpp"
#include "jxes/io.hpp"
#include "jxes/json_emit.hpp"
#include "jxes/json_tokens.hpp"
#include "jxes/json_tree.hpp"
#include "jxes/lexical.hpp"
#include "jxes/loggen.hpp"
#include "jxes/memtrace.hpp"
#include "jxes/model.hpp"
#include "jxes/reader.hpp"
#include "jxes/validator.hpp"
#include "jxes/writer.hpp"
#include "jxes/xes.hpp"
