from flask.cli import FlaskGroup

from app import app

cli = FlaskGroup(name='apmm', create_app=lambda: app, add_default_commands=False, load_dotenv=False)

if __name__ == "__main__":
    cli()
