#pragma once

#include "ig/bank_io.hpp"
#include "ig/common.hpp"
#include "ig/encoded_io.hpp"
#include "ig/evaluate.hpp"
#include "ig/forensics.hpp"
#include "ig/ingest.hpp"
#include "ig/mining.hpp"
#include "ig/preprocess.hpp"
#include "ig/schema.hpp"
#include "ig/scoring.hpp"
#include "ig/split.hpp"
