#pragma once

#include "aifv/analysis.hpp"
#include "aifv/bitstream.hpp"
#include "aifv/bitstring.hpp"
#include "aifv/codec.hpp"
#include "aifv/codetree.hpp"
#include "aifv/conventional.hpp"
#include "aifv/document.hpp"
#include "aifv/error.hpp"
#include "aifv/transform.hpp"
#include "aifv/vv_code.hpp"
#include "aifv/wordset.hpp"
