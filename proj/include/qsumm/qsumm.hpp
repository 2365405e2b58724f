#pragma once

#include "qsumm/annotate.hpp"
#include "qsumm/corpus.hpp"
#include "qsumm/error.hpp"
#include "qsumm/ingest.hpp"
#include "qsumm/models.hpp"
#include "qsumm/pipeline.hpp"
#include "qsumm/porter.hpp"
#include "qsumm/report.hpp"
#include "qsumm/rouge.hpp"
#include "qsumm/textproc.hpp"
#include "qsumm/vectorspace.hpp"
