"""Path index for graphs whose nodes carry single DNA symbols."""
