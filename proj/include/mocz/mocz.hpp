#pragma once

#include "blind_autocorr.hpp"
#include "bounds.hpp"
#include "channel.hpp"
#include "decoders.hpp"
#include "error.hpp"
#include "harness.hpp"
#include "huffman.hpp"
#include "poly.hpp"
