# COM-AI v3 Tests Package