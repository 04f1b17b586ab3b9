# Filesystem persistence for run artefacts and matrix games
